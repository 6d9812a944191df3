"""Finite covers from coset tables: induced signatures and tower checks.

A coset table for H <= pi_1^orb realizes the corresponding finite cover.
Local data is read off the permutations: a cycle of length L of a torsion
generator c_j (order m_j) is a point upstairs with ramification index L
and induced orbifold order m_j / L (dropped when it equals 1); each cycle
of a cusp generator d_k is one cusp.  The genus is solved from Euler
characteristic multiplicativity chi(cover) = index * chi(base).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coset_enum import CosetTable
from .errors import InternalConsistencyError, ValidationError
from .presentations import presentation
from .signatures import Signature, euler_char


def permutation_cycles(images: tuple[int, ...]) -> list[int]:
    """Cycle lengths (including fixed points) of a 1-based permutation."""
    n = len(images)
    seen = [False] * n
    cycles = []
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        a = start
        while not seen[a]:
            seen[a] = True
            a = images[a] - 1
            length += 1
        cycles.append(length)
    return cycles


@dataclass(frozen=True)
class SubgroupRecord:
    """A finite-index subgroup with the signature of its cover."""

    table: CosetTable
    induced_sig: Signature
    index: int


def induced_signature(parent: Signature, table: CosetTable) -> SubgroupRecord:
    """Signature of the cover attached to `table` over the `parent` curve."""
    pres = presentation(parent)
    table.check(pres)
    n = table.index

    orders = []
    for j, m in pres.torsion:
        name = pres.generators[j - 1]
        cycles = permutation_cycles(table.perms[name])
        for length in cycles:
            if m % length != 0:
                raise InternalConsistencyError(
                    f"cycle length {length} of {name} does not divide its order {m}"
                )
            if m // length >= 2:
                orders.append(m // length)

    cusps = 0
    for k in pres.cusp_generators:
        cusps += len(permutation_cycles(table.perms[pres.generators[k - 1]]))

    chi = n * euler_char(parent)
    two_g = 2 - cusps - sum(1 - Fraction(1, m) for m in orders) - chi
    if two_g.denominator != 1 or two_g.numerator % 2 != 0 or two_g < 0:
        raise InternalConsistencyError(
            f"induced genus does not solve: 2g = {two_g} at index {n}"
        )
    sig = Signature(genus=int(two_g) // 2, orders=tuple(orders), cusps=cusps)
    return SubgroupRecord(table=table, induced_sig=sig, index=n)


def ramification_profiles(parent: Signature, table: CosetTable) -> dict[str, list[int]]:
    """Cycle lengths of each torsion generator (the ramification profile of
    the cover over the corresponding orbifold point)."""
    pres = presentation(parent)
    table.check(pres)
    return {
        pres.generators[j - 1]: sorted(permutation_cycles(table.perms[pres.generators[j - 1]]))
        for j, _ in pres.torsion
    }


def quotient_map(fine: CosetTable, coarse: CosetTable) -> tuple[int, ...]:
    """G-set surjection from the cosets of K to the cosets of H, K <= H.

    Returns phi as a 1-based tuple with phi[0] == 1.  Raises if no
    equivariant map sending coset 1 to coset 1 exists, which certifies
    that the fine subgroup is not contained in the coarse one.
    """
    if fine.generators != coarse.generators:
        raise ValidationError("tables are over different presentations")
    phi = [0] * fine.index
    phi[0] = 1
    frontier = [1]
    seen = {1}
    while frontier:
        a = frontier.pop()
        for name in fine.generators:
            b = fine.perms[name][a - 1]
            image = coarse.perms[name][phi[a - 1] - 1]
            if b in seen:
                if phi[b - 1] != image:
                    raise ValidationError("no equivariant quotient map exists")
            else:
                phi[b - 1] = image
                seen.add(b)
                frontier.append(b)
    return tuple(phi)
