"""Acceptance suite: one test per exit criterion, at its stated tolerance
and runtime budget.  Each test prints a single PASS/FAIL line (run pytest
with -s to see them inline).
"""

import time
from fractions import Fraction
from random import Random

import propgen
from oracles import hurwitz_kernel_words
from logorbi.canonical import canonical_type_system, maximality_certificate
from logorbi.coset_enum import coset_enumerate, low_index_subgroups
from logorbi.covers import induced_signature
from logorbi.hypergeometric import (
    hyperbolic_triples,
    hypergeometric_monodromy,
    triangle_data,
)
from logorbi.orbposet import RamifiedCoverData, refines, resolve_ramification
from logorbi.presentations import presentation
from logorbi.signatures import (
    Sector,
    Signature,
    canonical_degree,
    classify_sector,
    euler_char,
    is_hyperbolic,
)

MODULAR = Signature(0, (2, 3), cusps=1)
TRIANGLE_237 = Signature(0, (2, 3, 7))


class Criterion:
    def __init__(self, number, budget_seconds, description):
        self.number = number
        self.budget = budget_seconds
        self.description = description

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        status = "PASS" if exc_type is None else "FAIL"
        print(
            f"ACCEPTANCE {self.number:2d} {status}  {elapsed * 1000:10.2f} ms "
            f"(budget {self.budget * 1000:g} ms)  {self.description}",
            flush=True,
        )
        if exc_type is None:
            assert elapsed < self.budget, (
                f"criterion {self.number} exceeded its runtime budget: "
                f"{elapsed:.3f}s > {self.budget:g}s"
            )
        return False


def test_criterion_1_exact_euler_characteristics():
    with Criterion(1, 0.001, "exact Euler characteristics"):
        assert euler_char(TRIANGLE_237) == Fraction(-1, 42)
        assert euler_char(MODULAR) == Fraction(-1, 6)


def test_criterion_2_sector_table():
    with Criterion(2, 0.001, "sector trichotomy table"):
        assert classify_sector(Signature(0, (2, 3, 5))) is Sector.SPHERICAL
        assert classify_sector(Signature(0, (2, 3, 6))) is Sector.EUCLIDEAN
        assert classify_sector(Signature(0, (2, 4, 4))) is Sector.EUCLIDEAN
        assert classify_sector(Signature(0, (2, 3, 7))) is Sector.HYPERBOLIC
        assert classify_sector(Signature(1)) is Sector.EUCLIDEAN
        assert classify_sector(Signature(2)) is Sector.HYPERBOLIC


def test_criterion_3_degree_index_formula():
    with Criterion(3, 1.0, "degree-index formula on the modular orbifold"):
        tables = low_index_subgroups(presentation(MODULAR), 6)
        records = [induced_signature(MODULAR, t) for t in tables if t.index == 6]
        torsion_free = [
            r for r in records if r.induced_sig == Signature(0, (), cusps=3)
        ]
        assert torsion_free, "no torsion-free index-6 class with 3 cusps found"
        record = torsion_free[0]
        assert euler_char(record.induced_sig) == Fraction(-1)
        assert euler_char(record.induced_sig) == 6 * euler_char(MODULAR)


def test_criterion_4_hurwitz_cover():
    with Criterion(4, 30.0, "index-168 Hurwitz cover of the (2,3,7) orbifold"):
        table = coset_enumerate(presentation(TRIANGLE_237), hurwitz_kernel_words())
        assert table.index == 168
        record = induced_signature(TRIANGLE_237, table)
        assert record.induced_sig == Signature(3)
        assert euler_char(record.induced_sig) == Fraction(-4)
        assert euler_char(record.induced_sig) == 168 * euler_char(TRIANGLE_237)


def test_criterion_5_canonical_types():
    with Criterion(5, 0.001, "canonical PSL2 types of (2,3,7) and a log point"):
        system = canonical_type_system(TRIANGLE_237)
        coeffs = [p.psl2.coeff for p in system.points]
        assert coeffs == [Fraction(1, 2), Fraction(2, 3), Fraction(6, 7)]
        assert [c.denominator for c in coeffs] == [2, 3, 7]
        log_system = canonical_type_system(Signature(1, (), cusps=1))
        log_point = log_system.points[-1]
        assert log_point.kind == "log"
        assert log_point.psl2.is_integral()
        assert log_point.positive_mp_nonzero


def test_criterion_6_maximality_bookkeeping():
    rng = Random(20260810)
    signatures = []
    while len(signatures) < 100:
        sig = Signature(
            rng.randint(0, 4),
            tuple(rng.randint(2, 12) for _ in range(rng.randint(0, 5))),
            rng.randint(0, 4),
        )
        if is_hyperbolic(sig):
            signatures.append(sig)
    with Criterion(6, 0.1, "maximality bookkeeping on 100 random signatures"):
        for sig in signatures:
            report = maximality_certificate(sig)
            assert report.pardeg_theta == canonical_degree(sig) / 2
            assert report.rank2_pdeg == 0


def test_criterion_7_filtered_algebra_properties():
    with Criterion(7, 5.0, "filtered-algebra property suite, 1000 instances each"):
        rng = Random(7_000)
        propgen.check_convolution_associativity(rng, 1000)
        propgen.check_dual_involution(rng, 1000)
        propgen.check_pdeg_tensor_formula(rng, 1000)
        propgen.check_grading_raises_filtration(rng, 1000)
        propgen.check_residue_closure(rng, 1000)
        propgen.check_pullback_scaling(rng, 1000)


def test_criterion_8_triangle_monodromy_sweep():
    with Criterion(8, 60.0, "triangle monodromy sweep over all p,q,r <= 8"):
        for (p, q, r) in hyperbolic_triples(8):
            report = hypergeometric_monodromy(triangle_data(p, q, r))
            assert max(report.trace_defects) < 1e-6, (p, q, r)
            assert max(report.relation_defects) < 1e-6, (p, q, r)
            assert report.reality_defect < 1e-6, (p, q, r)


def test_criterion_9_resolution_round_trip():
    rng = Random(99)
    with Criterion(9, 1.0, "ramification resolution round trip, 500 profiles"):
        for _ in range(500):
            degree = rng.randint(2, 40)
            profile = []
            left = degree
            while left > 0:
                e = rng.randint(1, left)
                profile.append(e)
                left -= e
            if all(e == 1 for e in profile):
                profile = [degree]
            cover = RamifiedCoverData(degree, (("x", tuple(profile)),))
            resolved = resolve_ramification(cover)
            m_x = resolved.target.order_at("x")
            for e, m_y in zip(profile, resolved.source_orders["x"]):
                assert e * m_y == m_x
            # minimality among common-multiple choices
            assert all(m_x % e == 0 for e in profile)
            for k in (2, 3, 5):
                alt = resolve_ramification(cover, multiplier=k)
                assert alt.target.order_at("x") == k * m_x
                assert refines(alt.target, resolved.target)


def test_criterion_10_cross_module_consistency():
    with Criterion(10, 5.0, "induced signatures match resolution source orders"):
        propgen.check_cover_resolution_consistency(Random(20260810), 50)
