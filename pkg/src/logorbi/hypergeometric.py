"""Uniformizing monodromy of hyperbolic triangle orbifolds.

A hyperbolic (p, q, r) orbifold with points at 0, 1, infinity is
uniformized by the second-order equation with local exponent differences
(1/p, 1/q, 1/r); its projective monodromy is the (p, q, r) triangle
group.  This module solves for the equation parameters exactly, integrates
the monodromy numerically, and certifies the trace, relation, and reality
properties against a closed-form local-exponent oracle.

Conventions, fixed here and part of the interface:

* Parameter branch: c = 1 - 1/p, c - a - b = 1/q, a - b = 1/r, i.e.
  a = (1 - 1/p - 1/q + 1/r)/2 and b = (1 - 1/p - 1/q - 1/r)/2.  Any
  consistent branch yields the same projective group; this one makes the
  outputs deterministic.
* Loops: based at 1/2 on the real axis; gamma0 runs straight to 1/4,
  counterclockwise around the circle |z| = 1/4, and back; gamma1 is the
  mirror image around 1.  gamma_inf is defined by the left-to-right path
  relation gamma0 gamma1 gamma_inf = 1.  Transport matrices act on
  columns and therefore compose contravariantly: the transport of a
  left-to-right word w1 w2 is T(w2) @ T(w1).  Hence Minf = (M1 @ M0)^-1,
  and the relation word evaluates as Minf @ M1 @ M0.
* Matrices are rescaled to determinant 1 before trace tests; projective
  statements take the minimum defect over the sign ambiguity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .hypode import Arc, Segment, check_exclusion, transport_matrix

EXCLUSION_RADIUS = 0.125
LOOP_RADIUS = 0.25
DEFAULT_TOL = 1e-10

# internal step tolerances are stricter than the requested monodromy
# accuracy; the margin absorbs error accumulation along the loops
_RTOL_MARGIN = 1e-2
_ATOL_MARGIN = 1e-4

Matrix2 = tuple[tuple[complex, complex], tuple[complex, complex]]

_ID: Matrix2 = ((1 + 0j, 0j), (0j, 1 + 0j))


def mat_mul(x: Matrix2, y: Matrix2) -> Matrix2:
    return (
        (
            x[0][0] * y[0][0] + x[0][1] * y[1][0],
            x[0][0] * y[0][1] + x[0][1] * y[1][1],
        ),
        (
            x[1][0] * y[0][0] + x[1][1] * y[1][0],
            x[1][0] * y[0][1] + x[1][1] * y[1][1],
        ),
    )


def mat_det(x: Matrix2) -> complex:
    return x[0][0] * x[1][1] - x[0][1] * x[1][0]


def mat_trace(x: Matrix2) -> complex:
    return x[0][0] + x[1][1]


def mat_inv(x: Matrix2) -> Matrix2:
    d = mat_det(x)
    return ((x[1][1] / d, -x[0][1] / d), (-x[1][0] / d, x[0][0] / d))


def mat_pow(x: Matrix2, n: int) -> Matrix2:
    out = _ID
    base = x
    while n:
        if n & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        n >>= 1
    return out


def mat_scale(x: Matrix2, s: complex) -> Matrix2:
    return ((x[0][0] * s, x[0][1] * s), (x[1][0] * s, x[1][1] * s))


def frobenius(x: Matrix2) -> float:
    return math.sqrt(sum(abs(v) ** 2 for row in x for v in row))


def mat_sub(x: Matrix2, y: Matrix2) -> Matrix2:
    return (
        (x[0][0] - y[0][0], x[0][1] - y[0][1]),
        (x[1][0] - y[1][0], x[1][1] - y[1][1]),
    )


def normalize_det(x: Matrix2) -> Matrix2:
    """Rescale by a square root of the determinant (sign choice is the
    usual projective ambiguity)."""
    return mat_scale(x, 1.0 / cmath.sqrt(mat_det(x)))


def dist_to_pm_identity(x: Matrix2) -> float:
    """min over signs of the Frobenius distance to +-identity."""
    return min(frobenius(mat_sub(x, _ID)), frobenius(mat_sub(x, mat_scale(_ID, -1))))


@dataclass(frozen=True)
class TriangleData:
    """Exact hypergeometric data of a hyperbolic (p, q, r) orbifold."""

    p: int
    q: int
    r: int
    exponent_differences: tuple[Fraction, Fraction, Fraction]
    riemann_scheme: tuple[tuple[Fraction, Fraction], ...]  # columns at 0, 1, inf
    hyp_params: tuple[Fraction, Fraction, Fraction]  # (a, b, c)


def triangle_data(p: int, q: int, r: int) -> TriangleData:
    """Solve the exponent-difference equations for a hyperbolic triple."""
    for n in (p, q, r):
        if not isinstance(n, int) or n < 2:
            raise ValidationError(f"triangle orders must be integers >= 2, got {n!r}")
    if Fraction(1, p) + Fraction(1, q) + Fraction(1, r) >= 1:
        raise ValidationError(
            f"({p},{q},{r}) is not hyperbolic: 1/p + 1/q + 1/r must be < 1"
        )
    a = (1 - Fraction(1, p) - Fraction(1, q) + Fraction(1, r)) / 2
    b = (1 - Fraction(1, p) - Fraction(1, q) - Fraction(1, r)) / 2
    c = 1 - Fraction(1, p)
    assert abs(1 - c) == Fraction(1, p)
    assert abs(c - a - b) == Fraction(1, q)
    assert abs(a - b) == Fraction(1, r)
    scheme = tuple(
        (Fraction(n - 1, 2 * n), Fraction(n + 1, 2 * n)) for n in (p, q, r)
    )
    return TriangleData(
        p=p,
        q=q,
        r=r,
        exponent_differences=(Fraction(1, p), Fraction(1, q), Fraction(1, r)),
        riemann_scheme=scheme,
        hyp_params=(a, b, c),
    )


def eigenvalue_oracle(data: TriangleData) -> tuple[float, float, float]:
    """Closed-form |trace| values from the local exponents alone.

    The monodromy at 0 has eigenvalues {1, e^{-2 pi i c}}, so after
    determinant normalization |tr| = 2|cos(pi c)| = 2 cos(pi/p); the same
    computation at 1 and infinity gives 2 cos(pi/q) and 2 cos(pi/r).
    """
    return (
        2.0 * math.cos(math.pi / data.p),
        2.0 * math.cos(math.pi / data.q),
        2.0 * math.cos(math.pi / data.r),
    )


def monodromy_loops(basepoint: float = 0.5) -> tuple[tuple, tuple]:
    """The documented loops around 0 and 1, based at `basepoint`.

    The basepoint must be a real number strictly between the two loop
    circles; both loops are checked against the exclusion radius.
    """
    bp = float(basepoint)
    if not LOOP_RADIUS < bp < 1 - LOOP_RADIUS:
        raise ValidationError(
            f"basepoint must lie in ({LOOP_RADIUS}, {1 - LOOP_RADIUS}), got {bp}"
        )
    loop0 = (
        Segment(bp, LOOP_RADIUS),
        Arc(0j, LOOP_RADIUS, 0.0, 2.0 * math.pi),
        Segment(LOOP_RADIUS, bp),
    )
    loop1 = (
        Segment(bp, 1 - LOOP_RADIUS),
        Arc(1 + 0j, LOOP_RADIUS, math.pi, 3.0 * math.pi),
        Segment(1 - LOOP_RADIUS, bp),
    )
    for loop in (loop0, loop1):
        check_exclusion(loop, (0j, 1 + 0j), EXCLUSION_RADIUS)
    return loop0, loop1


@dataclass(frozen=True)
class TriangleMonodromyReport:
    data: TriangleData
    m0: Matrix2
    m1: Matrix2
    minf: Matrix2
    traces: tuple[float, float, float]  # |tr| of the normalized matrices
    oracle_traces: tuple[float, float, float]
    trace_defects: tuple[float, float, float]
    relation_defects: tuple[float, float, float]  # M0^p, M1^q, loop relation
    reality_defect: float
    tolerance: float
    integration_steps: int
    backend: str

    @property
    def traces_pass(self) -> bool:
        return max(self.trace_defects) < self.tolerance

    @property
    def relations_pass(self) -> bool:
        return max(self.relation_defects) < self.tolerance

    @property
    def reality_pass(self) -> bool:
        return self.reality_defect < self.tolerance

    @property
    def all_pass(self) -> bool:
        return self.traces_pass and self.relations_pass and self.reality_pass


def hypergeometric_monodromy(
    data: TriangleData,
    integ_tol: float = DEFAULT_TOL,
    basepoint: float = 0.5,
    backend: str | None = None,
) -> TriangleMonodromyReport:
    """Integrate the monodromy of the uniformizing equation and certify it.

    `integ_tol` is the accuracy target for the reported defects; the
    internal step tolerance is stricter by a fixed margin.
    """
    if not integ_tol > 0:
        raise ValidationError("integ_tol must be positive")
    loop0, loop1 = monodromy_loops(basepoint)
    a, b, c = (float(v) for v in data.hyp_params)
    rtol = integ_tol * _RTOL_MARGIN
    atol = integ_tol * _ATOL_MARGIN
    t0 = transport_matrix(a, b, c, loop0, rtol, atol, backend=backend)
    t1 = transport_matrix(a, b, c, loop1, rtol, atol, backend=backend)

    m0 = normalize_det(t0.matrix)
    m1 = normalize_det(t1.matrix)
    minf = mat_inv(mat_mul(m1, m0))

    traces = (abs(mat_trace(m0)), abs(mat_trace(m1)), abs(mat_trace(minf)))
    oracle = eigenvalue_oracle(data)
    trace_defects = tuple(abs(t - o) for t, o in zip(traces, oracle))

    relation_defects = (
        dist_to_pm_identity(mat_pow(m0, data.p)),
        dist_to_pm_identity(mat_pow(m1, data.q)),
        # the left-to-right word gamma0 gamma1 gamma_inf composes
        # contravariantly as transports
        dist_to_pm_identity(mat_mul(mat_mul(minf, m1), m0)),
    )

    words = (
        m0,
        m1,
        mat_mul(m0, m1),
        mat_mul(m0, mat_mul(m1, m1)),
        mat_mul(mat_mul(m0, m0), m1),
    )
    reality_defect = max(abs(mat_trace(w).imag) for w in words)

    return TriangleMonodromyReport(
        data=data,
        m0=m0,
        m1=m1,
        minf=minf,
        traces=traces,
        oracle_traces=oracle,
        trace_defects=trace_defects,
        relation_defects=relation_defects,
        reality_defect=reality_defect,
        tolerance=integ_tol,
        integration_steps=t0.accepted_steps + t1.accepted_steps,
        backend=t0.backend,
    )


def hyperbolic_triples(max_order: int):
    """All hyperbolic (p, q, r) with orders up to `max_order`."""
    out = []
    for p in range(2, max_order + 1):
        for q in range(2, max_order + 1):
            for r in range(2, max_order + 1):
                if Fraction(1, p) + Fraction(1, q) + Fraction(1, r) < 1:
                    out.append((p, q, r))
    return out
