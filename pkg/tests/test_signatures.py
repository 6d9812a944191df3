from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from logorbi.errors import ValidationError
from logorbi.signatures import (
    Sector,
    Signature,
    canonical_degree,
    classify_sector,
    euler_char,
    kappa,
)


def test_euler_char_examples():
    assert euler_char(Signature(0, (2, 3, 7))) == Fraction(-1, 42)
    assert euler_char(Signature(1)) == 0
    assert euler_char(Signature(0, (2, 3), cusps=1)) == Fraction(-1, 6)


def test_canonical_degree_examples():
    assert canonical_degree(Signature(0, (2, 3, 7))) == Fraction(1, 42)
    assert canonical_degree(Signature(2)) == 2
    assert canonical_degree(Signature(0, (2, 4, 4))) == 0


def test_kappa():
    assert kappa(2) == Fraction(1, 2)
    assert kappa("log") == 1
    assert kappa(7) == Fraction(6, 7)
    with pytest.raises(ValidationError):
        kappa(1)


def test_sector_examples():
    assert classify_sector(Signature(0, (2, 3, 6))) is Sector.EUCLIDEAN
    assert classify_sector(Signature(2)) is Sector.HYPERBOLIC
    assert classify_sector(Signature(0)) is Sector.SPHERICAL
    assert classify_sector(Signature(0, (2, 3, 5))) is Sector.SPHERICAL
    assert classify_sector(Signature(0, (2, 4, 4))) is Sector.EUCLIDEAN
    assert classify_sector(Signature(0, (2, 3, 7))) is Sector.HYPERBOLIC


def test_orders_sorted_and_validated():
    assert Signature(0, (7, 2, 3)).orders == (2, 3, 7)
    assert Signature(0, (7, 2, 3)) == Signature(0, (3, 7, 2))
    with pytest.raises(ValidationError):
        Signature(-1)
    with pytest.raises(ValidationError):
        Signature(0, (1,))
    with pytest.raises(ValidationError):
        Signature(0, cusps=-2)


def test_json_round_trip():
    sig = Signature(1, (2, 5), cusps=2)
    assert Signature.from_json(sig.to_json()) == sig
    with pytest.raises(ValidationError):
        Signature.from_json({"genus": 0, "bogus": 1})
    with pytest.raises(ValidationError):
        Signature.from_json([1, 2])


signatures = st.builds(
    Signature,
    st.integers(min_value=0, max_value=5),
    st.lists(st.integers(min_value=2, max_value=12), max_size=6).map(tuple),
    st.integers(min_value=0, max_value=5),
)


@given(signatures)
def test_chi_plus_degree_is_zero(sig):
    assert euler_char(sig) + canonical_degree(sig) == 0


@given(signatures)
def test_hyperbolic_iff_negative_chi(sig):
    assert (classify_sector(sig) is Sector.HYPERBOLIC) == (euler_char(sig) < 0)


@given(signatures)
def test_high_genus_always_hyperbolic(sig):
    if sig.genus >= 2:
        assert classify_sector(sig) is Sector.HYPERBOLIC


@given(signatures)
def test_genus_one_euclidean_iff_bare(sig):
    if sig.genus == 1:
        expected = Sector.EUCLIDEAN if (not sig.orders and sig.cusps == 0) else Sector.HYPERBOLIC
        assert classify_sector(sig) is expected


@given(signatures, st.integers(min_value=2, max_value=12))
def test_adding_points_decreases_chi(sig, m):
    with_orb = Signature(sig.genus, sig.orders + (m,), sig.cusps)
    with_cusp = Signature(sig.genus, sig.orders, sig.cusps + 1)
    assert euler_char(with_orb) < euler_char(sig)
    assert euler_char(with_cusp) < euler_char(sig)
