"""Coset enumeration and bounded subgroup search for orbifold groups.

The enumerator is HLT-style Todd-Coxeter with a lookahead pass when the
table hits its row budget, followed by compression and a standardization
pass (BFS relabeling from coset 1 in generator order), so that completed
tables are canonical and suitable for golden tests.

`low_index_subgroups` is a systematic backtrack over partial coset tables:
entries are filled in row-major scan order, new cosets are introduced with
the smallest unused label, and relator scans force deductions.  Every
subgroup of index <= N is produced by exactly one branch; conjugacy
classes are then identified by the minimum, over all base points, of the
relabeled table encoding.

Cosets are right cosets Hg; a generator x acts by Hg -> Hgx, so words act
left-to-right.  Internally cosets are 0-based; the public `CosetTable`
uses 1-based permutation images.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import ResourceError, ValidationError
from .presentations import OrbiPresentation, Word, validate_word

DEFAULT_MAX_COSETS = int(os.environ.get("LOGORBI_MAX_COSETS", 10**6))


@dataclass(frozen=True)
class CosetTable:
    """Transitive permutation action of a presented group on right cosets.

    `perms[name]` is the 1-based image tuple of the generator `name`;
    `subgroup_words` is empty when the table came out of the low-index
    search (no generating words are tracked there).
    """

    index: int
    generators: tuple[str, ...]
    perms: dict[str, tuple[int, ...]]
    subgroup_words: tuple[Word, ...] = ()

    def perm(self, i: int) -> tuple[int, ...]:
        """Permutation of 1-based generator index i (negative for inverse)."""
        images = self.perms[self.generators[abs(i) - 1]]
        if i > 0:
            return images
        inv = [0] * self.index
        for a, b in enumerate(images):
            inv[b - 1] = a + 1
        return tuple(inv)

    def apply_word(self, coset: int, word: Word) -> int:
        """Image of a 1-based coset under a word (left-to-right action)."""
        for g in word:
            coset = self.perm(g)[coset - 1]
        return coset

    def check(self, pres: OrbiPresentation) -> None:
        """Raise unless this table is a valid coset table for `pres`."""
        if tuple(pres.generators) != self.generators:
            raise ValidationError("table generators do not match the presentation")
        n = self.index
        for name, images in self.perms.items():
            if sorted(images) != list(range(1, n + 1)):
                raise ValidationError(f"action of {name!r} is not a permutation of 1..{n}")
        # transitivity
        seen = {1}
        frontier = [1]
        while frontier:
            a = frontier.pop()
            for name in self.generators:
                b = self.perms[name][a - 1]
                if b not in seen:
                    seen.add(b)
                    frontier.append(b)
        if len(seen) != n:
            raise ValidationError("coset action is not transitive")
        for rel in pres.relators:
            for a in range(1, n + 1):
                if self.apply_word(a, rel) != a:
                    raise ValidationError(f"relator {rel} does not act trivially")
        for w in self.subgroup_words:
            if self.apply_word(1, w) != 1:
                raise ValidationError(f"subgroup word {w} does not stabilize coset 1")

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "perms": {name: list(self.perms[name]) for name in self.generators},
            "subgroup_words": [list(w) for w in self.subgroup_words],
        }

    @classmethod
    def from_json(cls, obj, generators: tuple[str, ...]) -> "CosetTable":
        try:
            n = int(obj["index"])
            perms = {
                name: tuple(int(v) for v in obj["perms"][name]) for name in generators
            }
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed coset table object: {exc}") from None
        words = tuple(tuple(w) for w in obj.get("subgroup_words", []))
        return cls(index=n, generators=tuple(generators), perms=perms, subgroup_words=words)


def _letters(word: Word) -> tuple[int, ...]:
    """Word in signed generator numbers -> letters over the doubled alphabet.

    Letter 2i is generator i+1, letter 2i+1 its inverse; inv(x) = x ^ 1.
    """
    return tuple(2 * (g - 1) if g > 0 else 2 * (-g - 1) + 1 for g in word)


class _Overflow(Exception):
    """Internal: the row budget was hit; try lookahead + compaction."""


class _Enumerator:
    """One HLT run over a mutable table.  Not reusable."""

    MAX_RESTARTS = 32

    def __init__(self, ngens: int, relators, subgroup_words, max_cosets: int):
        self.nletters = 2 * ngens
        self.relators = [_letters(r) for r in relators if r]
        self.subgroup_words = [_letters(w) for w in subgroup_words]
        self.max_cosets = max_cosets
        self.table = [[None] * self.nletters]
        self.p = [0]  # union-find over coset labels; p[a] <= a
        self.nlive = 1

    # -- union-find over coincident cosets ----------------------------------

    def rep(self, a: int) -> int:
        r = a
        while self.p[r] != r:
            r = self.p[r]
        while self.p[a] != a:
            self.p[a], a = r, self.p[a]
        return r

    def _merge(self, a: int, b: int, queue: list) -> None:
        a, b = self.rep(a), self.rep(b)
        if a != b:
            a, b = min(a, b), max(a, b)
            self.p[b] = a
            self.nlive -= 1
            queue.append(b)

    def _coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self._merge(a, b, queue)
        while queue:
            dead = queue.pop(0)
            row = self.table[dead]
            for x in range(self.nletters):
                d = row[x]
                if d is None:
                    continue
                # detach the backward reference, then replay the edge
                self.table[d][x ^ 1] = None
                mu, nu = self.rep(dead), self.rep(d)
                ext = self.table[mu][x]
                if ext is not None:
                    self._merge(nu, ext, queue)
                else:
                    ext = self.table[nu][x ^ 1]
                    if ext is not None:
                        self._merge(mu, ext, queue)
                    else:
                        self.table[mu][x] = nu
                        self.table[nu][x ^ 1] = mu

    # -- definitions and scanning -------------------------------------------

    def _define(self, a: int, x: int) -> None:
        if len(self.table) >= self.max_cosets:
            raise _Overflow
        b = len(self.table)
        self.table.append([None] * self.nletters)
        self.p.append(b)
        self.nlive += 1
        self.table[a][x] = b
        self.table[b][x ^ 1] = a

    def _scan(self, a: int, word, fill: bool) -> None:
        f, i = a, 0
        b, j = a, len(word) - 1
        while True:
            while i <= j and self.table[f][word[i]] is not None:
                f = self.table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self._coincidence(f, b)
                return
            while j >= i and self.table[b][word[j] ^ 1] is not None:
                b = self.table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self._coincidence(f, b)
                return
            if i == j:  # deduction closes the scan
                self.table[f][word[i]] = b
                self.table[b][word[i] ^ 1] = f
                return
            if not fill:
                return
            self._define(f, word[i])

    def _lookahead(self) -> None:
        for a in range(len(self.table)):
            if self.rep(a) != a:
                continue
            for rel in self.relators:
                self._scan(a, rel, fill=False)
                if self.rep(a) != a:
                    break

    def _compact(self) -> None:
        """Drop dead rows, relabeling live cosets to 0..nlive-1."""
        live = [a for a in range(len(self.table)) if self.rep(a) == a]
        relabel = {a: i for i, a in enumerate(live)}
        new_table = []
        for a in live:
            new_table.append(
                [None if v is None else relabel[self.rep(v)] for v in self.table[a]]
            )
        self.table = new_table
        self.p = list(range(len(live)))
        self.nlive = len(live)

    def run(self) -> None:
        for restart in range(self.MAX_RESTARTS):
            try:
                self._pass()
                return
            except _Overflow:
                # a lookahead may collapse enough cosets to free row budget
                self._lookahead()
                self._compact()
                if len(self.table) >= self.max_cosets:
                    raise ResourceError(
                        f"coset enumeration exceeded {self.max_cosets} rows "
                        "(the subgroup may have infinite index)"
                    ) from None
        raise ResourceError(
            "coset enumeration made no progress within the row budget "
            f"({self.max_cosets} rows)"
        )

    def _pass(self) -> None:
        """One full HLT sweep; raises _Overflow when the budget is hit."""
        for w in self.subgroup_words:
            self._scan(0, w, fill=True)
        a = 0
        while a < len(self.table):
            if self.rep(a) != a:
                a += 1
                continue
            for rel in self.relators:
                self._scan(a, rel, fill=True)
                if self.rep(a) != a:
                    break
            if self.rep(a) == a:
                for x in range(self.nletters):
                    if self.table[a][x] is None:
                        self._define(a, x)
            a += 1

    def live_table(self) -> list[list[int]]:
        """Compressed table over live cosets, entries rewritten to 0..n-1."""
        live = [a for a in range(len(self.table)) if self.rep(a) == a]
        relabel = {a: i for i, a in enumerate(live)}
        out = []
        for a in live:
            row = self.table[a]
            out.append([relabel[self.rep(v)] for v in row])
        return out


def _standardize(table: list[list[int]], base: int = 0) -> list[list[int]]:
    """Relabel cosets in BFS order from `base`, scanning letters in order.

    The result is the lexicographically minimal relabeling that fixes the
    base coset, which makes completed tables canonical.
    """
    n = len(table)
    new = [None] * n
    new[base] = 0
    order = [base]
    nxt = 1
    for a in order:
        for x in range(len(table[a])):
            b = table[a][x]
            if new[b] is None:
                new[b] = nxt
                nxt += 1
                order.append(b)
    out = [[None] * len(table[0]) for _ in range(n)]
    for a in range(n):
        for x in range(len(table[a])):
            out[new[a]][x] = new[table[a][x]]
    return out


def _to_coset_table(table, generators, subgroup_words=()) -> CosetTable:
    perms = {}
    for i, name in enumerate(generators):
        perms[name] = tuple(table[a][2 * i] + 1 for a in range(len(table)))
    return CosetTable(
        index=len(table),
        generators=tuple(generators),
        perms=perms,
        subgroup_words=tuple(tuple(w) for w in subgroup_words),
    )


def _from_coset_table(table: CosetTable) -> list[list[int]]:
    ngens = len(table.generators)
    out = [[0] * (2 * ngens) for _ in range(table.index)]
    for i, name in enumerate(table.generators):
        images = table.perms[name]
        for a, b in enumerate(images):
            out[a][2 * i] = b - 1
            out[b - 1][2 * i + 1] = a
    return out


def standardize_table(table: CosetTable, base: int = 1) -> CosetTable:
    """BFS-relabel a complete table from the given 1-based base coset."""
    if not 1 <= base <= table.index:
        raise ValidationError(f"base coset {base} out of range")
    rows = _standardize(_from_coset_table(table), base - 1)
    return _to_coset_table(rows, table.generators, table.subgroup_words if base == 1 else ())


def coset_enumerate(
    pres: OrbiPresentation,
    subgroup_words,
    max_cosets: int = DEFAULT_MAX_COSETS,
) -> CosetTable:
    """Complete, collapsed, standardized coset table of <subgroup_words>.

    Raises ResourceError if more than `max_cosets` table rows would be
    needed, which in particular happens for infinite-index subgroups.
    """
    if max_cosets < 1:
        raise ValidationError("max_cosets must be >= 1")
    words = [validate_word(w, pres.num_generators) for w in subgroup_words]
    enum = _Enumerator(pres.num_generators, pres.relators, words, max_cosets)
    enum.run()
    table = _standardize(enum.live_table())
    result = _to_coset_table(table, pres.generators, words)
    result.check(pres)
    return result


# ---------------------------------------------------------------------------
# Low-index subgroup search
# ---------------------------------------------------------------------------

DEFAULT_MAX_NODES = 10**6


@dataclass
class _SearchState:
    table: list[list[int | None]]

    def clone(self) -> "_SearchState":
        return _SearchState([row[:] for row in self.table])


def _propagate(state: _SearchState, relators) -> bool:
    """Deduce forced entries from relator scans; False on contradiction."""
    changed = True
    while changed:
        changed = False
        for a in range(len(state.table)):
            for rel in relators:
                f, i = a, 0
                b, j = a, len(rel) - 1
                while i <= j and state.table[f][rel[i]] is not None:
                    f = state.table[f][rel[i]]
                    i += 1
                if i > j:
                    if f != b:
                        return False
                    continue
                while j >= i and state.table[b][rel[j] ^ 1] is not None:
                    b = state.table[b][rel[j] ^ 1]
                    j -= 1
                if j < i:
                    return False
                if i == j:
                    if state.table[f][rel[i]] is not None or state.table[b][rel[i] ^ 1] is not None:
                        return False
                    state.table[f][rel[i]] = b
                    state.table[b][rel[i] ^ 1] = f
                    changed = True
    return True


def _class_canonical_key(table: list[list[int]]) -> tuple:
    """Canonical encoding of the conjugacy class: min over base points."""
    return min(
        tuple(map(tuple, _standardize(table, base))) for base in range(len(table))
    )


def low_index_subgroups(
    pres: OrbiPresentation,
    max_index: int,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> list[CosetTable]:
    """One standardized coset table per conjugacy class of subgroups of
    index <= max_index, in a deterministic canonical order.

    Raises ResourceError when the backtrack search exceeds `max_nodes`
    branch nodes.
    """
    if max_index < 1:
        raise ValidationError("max_index must be >= 1")
    nletters = 2 * pres.num_generators
    relators = [_letters(r) for r in pres.relators if r]
    nodes = 0
    classes: dict[tuple, list[list[int]]] = {}

    def first_undefined(table):
        for a in range(len(table)):
            row = table[a]
            for x in range(nletters):
                if row[x] is None:
                    return a, x
        return None

    def visit(state: _SearchState):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise ResourceError(f"low-index search exceeded {max_nodes} nodes")
        if not _propagate(state, relators):
            return
        slot = first_undefined(state.table)
        if slot is None:
            table = [row[:] for row in state.table]
            key = _class_canonical_key(table)
            if key not in classes:
                classes[key] = [list(row) for row in key]
            return
        a, x = slot
        n = len(state.table)
        candidates = [b for b in range(n) if state.table[b][x ^ 1] is None]
        if n < max_index:
            candidates.append(n)
        for b in candidates:
            child = state.clone()
            if b == n:
                child.table.append([None] * nletters)
            child.table[a][x] = b
            child.table[b][x ^ 1] = a
            visit(child)

    visit(_SearchState([[None] * nletters]))
    tables = sorted(classes.values(), key=lambda t: (len(t), tuple(map(tuple, t))))
    return [_to_coset_table(t, pres.generators) for t in tables]
