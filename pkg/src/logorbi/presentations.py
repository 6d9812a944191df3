"""Standard presentations of orbifold fundamental groups.

For a signature (g; m_1..m_r; s) the group is

    < a_1, b_1, ..., a_g, b_g, c_1, ..., c_r, d_1, ..., d_s |
      [a_1,b_1]...[a_g,b_g] c_1...c_r d_1...d_s = 1,  c_j^{m_j} = 1 >.

Words over the generators are tuples of signed 1-based indices: generator
number i is `i`, its inverse `-i`.  This is the word format used by the
coset enumerator and the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .signatures import Signature

Word = tuple[int, ...]


def invert_word(w: Word) -> Word:
    return tuple(-g for g in reversed(w))


def commutator(u: Word, v: Word) -> Word:
    return u + v + invert_word(u) + invert_word(v)


def conjugate(w: Word, t: Word) -> Word:
    """t w t^-1 (left-to-right product convention)."""
    return t + w + invert_word(t)


def word_pow(w: Word, n: int) -> Word:
    if n < 0:
        return invert_word(w) * (-n)
    return w * n


def validate_word(w, num_generators: int) -> Word:
    word = tuple(w)
    for g in word:
        if not isinstance(g, int) or g == 0 or abs(g) > num_generators:
            raise ValidationError(
                f"word letter {g!r} out of range for {num_generators} generators"
            )
    return word


@dataclass(frozen=True)
class OrbiPresentation:
    """Generators and relators attached to a signature.

    Generator order is a_1, b_1, ..., a_g, b_g, c_1, ..., c_r, d_1, ..., d_s;
    relators are the long relation followed by the torsion relations
    c_j^{m_j}.
    """

    sig: Signature
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    @property
    def torsion(self) -> tuple[tuple[int, int], ...]:
        """(generator index, order) for each torsion generator c_j."""
        g, r = self.sig.genus, len(self.sig.orders)
        return tuple((2 * g + j + 1, self.sig.orders[j]) for j in range(r))

    @property
    def cusp_generators(self) -> tuple[int, ...]:
        g, r = self.sig.genus, len(self.sig.orders)
        return tuple(2 * g + r + k + 1 for k in range(self.sig.cusps))

    def generator_index(self, name: str) -> int:
        try:
            return self.generators.index(name) + 1
        except ValueError:
            raise ValidationError(f"unknown generator {name!r}") from None


def presentation(sig: Signature) -> OrbiPresentation:
    """Standard presentation of the orbifold fundamental group of `sig`."""
    g, r, s = sig.genus, len(sig.orders), sig.cusps
    names = []
    for i in range(g):
        names += [f"a{i + 1}", f"b{i + 1}"]
    names += [f"c{j + 1}" for j in range(r)]
    names += [f"d{k + 1}" for k in range(s)]

    long_rel: Word = ()
    for i in range(g):
        a, b = 2 * i + 1, 2 * i + 2
        long_rel += commutator((a,), (b,))
    long_rel += tuple(2 * g + j + 1 for j in range(r))
    long_rel += tuple(2 * g + r + k + 1 for k in range(s))

    relators = [long_rel] if long_rel else []
    for j, m in enumerate(sig.orders):
        relators.append(word_pow((2 * g + j + 1,), m))
    return OrbiPresentation(sig=sig, generators=tuple(names), relators=tuple(relators))
