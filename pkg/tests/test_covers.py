import pytest

from logorbi.coset_enum import coset_enumerate, low_index_subgroups
from logorbi.covers import (
    induced_signature,
    permutation_cycles,
    quotient_map,
    ramification_profiles,
)
from logorbi.errors import ValidationError
from logorbi.presentations import conjugate, presentation
from logorbi.signatures import Signature, euler_char

from oracles import hurwitz_kernel_words
from test_coset_enum import GAMMA2_WORDS, MODULAR, TRIANGLE_237


def test_permutation_cycles():
    assert sorted(permutation_cycles((2, 1, 3))) == [1, 2]
    assert permutation_cycles((1,)) == [1]
    assert sorted(permutation_cycles((2, 3, 1, 5, 4))) == [2, 3]


def test_identity_cover_keeps_signature():
    for sig in [MODULAR, TRIANGLE_237, Signature(2), Signature(1, (4,), cusps=2)]:
        pres = presentation(sig)
        table = coset_enumerate(pres, [(i,) for i in range(1, pres.num_generators + 1)])
        rec = induced_signature(sig, table)
        assert rec.index == 1
        assert rec.induced_sig == sig


def test_level_two_cover_of_modular_orbifold():
    table = coset_enumerate(presentation(MODULAR), GAMMA2_WORDS)
    rec = induced_signature(MODULAR, table)
    assert rec.index == 6
    assert rec.induced_sig == Signature(0, (), cusps=3)
    assert euler_char(rec.induced_sig) == 6 * euler_char(MODULAR)


def test_klein_quartic_cover():
    table = coset_enumerate(presentation(TRIANGLE_237), hurwitz_kernel_words())
    rec = induced_signature(TRIANGLE_237, table)
    assert rec.index == 168
    assert rec.induced_sig == Signature(3)
    profiles = ramification_profiles(TRIANGLE_237, table)
    # torsion-free cover: every cycle has full length
    assert profiles["c1"] == [2] * 84
    assert profiles["c2"] == [3] * 56
    assert profiles["c3"] == [7] * 24


def test_chi_multiplicativity_and_order_divisibility_low_index():
    for sig in [MODULAR, Signature(0, (2, 2, 2, 3)), Signature(1, (2,), cusps=1)]:
        pres = presentation(sig)
        for table in low_index_subgroups(pres, 5):
            rec = induced_signature(sig, table)
            assert euler_char(rec.induced_sig) == rec.index * euler_char(sig)
            for m in rec.induced_sig.orders:
                assert any(parent_m % m == 0 for parent_m in sig.orders)


def test_cusp_count_is_total_cusp_cycle_count():
    sig = Signature(0, (2,), cusps=2)
    pres = presentation(sig)
    for table in low_index_subgroups(pres, 4):
        rec = induced_signature(sig, table)
        expected = sum(
            len(permutation_cycles(table.perms[pres.generators[k - 1]]))
            for k in pres.cusp_generators
        )
        assert rec.induced_sig.cusps == expected


def test_tower_composition():
    # H = level-2 subgroup of the modular group; K generated by squares and
    # products of its generators, so K <= H by construction
    pres = presentation(MODULAR)
    h_words = GAMMA2_WORDS
    k_words = [w + w for w in h_words] + [
        h_words[0] + h_words[1],
        h_words[1] + h_words[2],
        conjugate(h_words[0] + h_words[0], h_words[1]),
    ]
    h_table = coset_enumerate(pres, h_words)
    k_table = coset_enumerate(pres, k_words)
    assert k_table.index % h_table.index == 0

    phi = quotient_map(k_table, h_table)
    assert phi[0] == 1
    # equivariance and uniform fiber size certify the tower
    fibers = {}
    for a, image in enumerate(phi, start=1):
        fibers.setdefault(image, []).append(a)
    sizes = {len(v) for v in fibers.values()}
    assert sizes == {k_table.index // h_table.index}
    for name in pres.generators:
        for a in range(1, k_table.index + 1):
            assert phi[k_table.perms[name][a - 1] - 1] == h_table.perms[name][phi[a - 1] - 1]

    # chi multiplies along the tower
    h_rec = induced_signature(MODULAR, h_table)
    k_rec = induced_signature(MODULAR, k_table)
    ratio = k_table.index // h_table.index
    assert euler_char(k_rec.induced_sig) == ratio * euler_char(h_rec.induced_sig)

    # each cycle upstairs maps onto a cycle downstairs of dividing length,
    # so induced local data refines along the tower
    for name in pres.generators:
        perm = k_table.perms[name]
        coarse_perm = h_table.perms[name]
        for start in range(1, k_table.index + 1):
            length, a = 0, start
            while True:
                a = perm[a - 1]
                length += 1
                if a == start:
                    break
            clength, b = 0, phi[start - 1]
            while True:
                b = coarse_perm[b - 1]
                clength += 1
                if b == phi[start - 1]:
                    break
            assert length % clength == 0


def test_quotient_map_rejects_non_subgroup():
    pres = presentation(MODULAR)
    h_table = coset_enumerate(pres, GAMMA2_WORDS)
    # the index-2 subgroup contains torsion, so it does not sit inside the
    # torsion-free level-2 subgroup
    other = next(t for t in low_index_subgroups(pres, 2) if t.index == 2)
    with pytest.raises(ValidationError):
        quotient_map(other, h_table)


def test_induced_signature_rejects_foreign_table():
    table = coset_enumerate(presentation(MODULAR), GAMMA2_WORDS)
    with pytest.raises(ValidationError):
        induced_signature(TRIANGLE_237, table)
