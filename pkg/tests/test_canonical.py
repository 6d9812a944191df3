from fractions import Fraction
from random import Random

import pytest

from logorbi.canonical import canonical_type_system, maximality_certificate
from logorbi.errors import ValidationError
from logorbi.parahoric import psl2_type
from logorbi.signatures import Signature, canonical_degree, is_hyperbolic


def test_canonical_types_237():
    system = canonical_type_system(Signature(0, (2, 3, 7)))
    kappas = [p.kappa for p in system.points]
    assert kappas == [Fraction(1, 2), Fraction(2, 3), Fraction(6, 7)]
    assert [p.psl2 for p in system.points] == [
        psl2_type("1/2"),
        psl2_type("2/3"),
        psl2_type("6/7"),
    ]
    assert [p.kappa.denominator for p in system.points] == [2, 3, 7]
    assert [p.sl2_half_weight for p in system.points] == [
        Fraction(1, 4),
        Fraction(1, 3),
        Fraction(3, 7),
    ]


def test_canonical_type_log_point():
    system = canonical_type_system(Signature(2, (), cusps=1))
    log_points = [p for p in system.points if p.kind == "log"]
    assert len(log_points) == 1
    p = log_points[0]
    assert p.kappa == 1
    assert p.psl2 == psl2_type(1)
    assert p.psl2.is_integral()
    assert p.positive_mp_nonzero
    assert p.sl2_half_weight == Fraction(1, 2)


def test_non_hyperbolic_rejected():
    for sig in [Signature(0), Signature(1), Signature(0, (2, 3, 6)), Signature(0, (2, 2))]:
        with pytest.raises(ValidationError):
            canonical_type_system(sig)
        with pytest.raises(ValidationError):
            maximality_certificate(sig)


def test_maximality_examples():
    rep = maximality_certificate(Signature(0, (2, 3, 7)))
    assert rep.deg_omega == Fraction(1, 42)
    assert rep.pardeg_theta == Fraction(1, 84)
    assert rep.rank2_pdeg == 0

    rep = maximality_certificate(Signature(2))
    assert rep.deg_omega == 2
    assert rep.pardeg_theta == 1

    rep = maximality_certificate(Signature(0, (2, 3), cusps=1))
    assert rep.deg_omega == Fraction(1, 6)
    assert rep.pardeg_theta == Fraction(1, 12)


def rand_hyperbolic_signatures(rng, count):
    out = []
    while len(out) < count:
        sig = Signature(
            rng.randint(0, 4),
            tuple(rng.randint(2, 12) for _ in range(rng.randint(0, 5))),
            rng.randint(0, 4),
        )
        if is_hyperbolic(sig):
            out.append(sig)
    return out


def test_maximality_identities_random():
    rng = Random(7)
    for sig in rand_hyperbolic_signatures(rng, 100):
        rep = maximality_certificate(sig)
        assert rep.pardeg_theta == canonical_degree(sig) / 2
        assert rep.pardeg_theta == rep.pardeg_theta_inv_omega
        assert rep.higgs_entry_is_degree_isomorphism
        assert rep.rank2_pdeg == 0
        assert rep.sign_choice_invariant


def test_pushout_matches_stored_type():
    rng = Random(11)
    for sig in rand_hyperbolic_signatures(rng, 25):
        system = canonical_type_system(sig)
        for p in system.points:
            assert p.psl2.coeff == p.kappa
            assert p.psl2.coeff == 2 * p.sl2_half_weight
