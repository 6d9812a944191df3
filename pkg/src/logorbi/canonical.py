"""The canonical maximal PSL2 local-type system of a hyperbolic curve.

At every marked point the canonical bundle has local coefficient kappa
(1 - 1/m at an orbifold point, 1 at a cusp).  The square-root line has
SL2 coefficient kappa/2; pushing out along SL2 -> PSL2 gives the
canonical type kappa * coweight.  At an orbifold point of order m the
reduced denominator of kappa is exactly m; at a cusp the type is integral
but the positive part of its grading survives.

`maximality_certificate` records the degree bookkeeping that makes the
object maximal: the square-root line and its twist by the canonical
bundle have equal parahoric degree (half the canonical degree), and the
rank-2 local model has parahoric degree zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .parahoric import (
    FilteredSpace,
    LocalType,
    ParahoricBundleData,
    mp_grading,
    pdeg,
    pushout_sl2_to_psl2,
    sl2_type,
)
from .signatures import Signature, canonical_degree, is_hyperbolic, kappa


@dataclass(frozen=True)
class CanonicalPoint:
    """Canonical local data at one marked point."""

    point_id: str
    kind: str  # "orb" or "log"
    order: int | None
    kappa: Fraction
    psl2: LocalType
    sl2_half_weight: Fraction
    positive_mp_nonzero: bool


@dataclass(frozen=True)
class CanonicalTypeSystem:
    sig: Signature
    points: tuple[CanonicalPoint, ...]


def _require_hyperbolic(sig: Signature) -> None:
    if not is_hyperbolic(sig):
        raise ValidationError(
            f"the canonical type system needs a hyperbolic signature; "
            f"{sig} has canonical degree {canonical_degree(sig)}"
        )


def canonical_type_system(sig: Signature) -> CanonicalTypeSystem:
    """Per-point canonical PSL2 types kappa * coweight for a hyperbolic
    signature, with the denominator and cusp-grading checks applied."""
    _require_hyperbolic(sig)
    points = []
    for j, m in enumerate(sig.orders):
        k = kappa(m)
        t = pushout_sl2_to_psl2(sl2_type(k / 2))
        # reduced denominator of 1 - 1/m is m itself (gcd(m-1, m) = 1)
        if k.denominator != m:
            raise ValidationError(f"denominator of {k} is not the orbifold order {m}")
        points.append(
            CanonicalPoint(
                point_id=f"orb{j + 1}",
                kind="orb",
                order=m,
                kappa=k,
                psl2=t,
                sl2_half_weight=k / 2,
                positive_mp_nonzero=bool(mp_grading(t).positive_part()),
            )
        )
    for k_idx in range(sig.cusps):
        t = pushout_sl2_to_psl2(sl2_type(Fraction(1, 2)))
        if not t.is_integral():
            raise ValidationError("cusp type must be integral")
        points.append(
            CanonicalPoint(
                point_id=f"log{k_idx + 1}",
                kind="log",
                order=None,
                kappa=Fraction(1),
                psl2=t,
                sl2_half_weight=Fraction(1, 2),
                positive_mp_nonzero=bool(mp_grading(t).positive_part()),
            )
        )
    return CanonicalTypeSystem(sig=sig, points=tuple(points))


def _theta_line(system: CanonicalTypeSystem) -> ParahoricBundleData:
    return ParahoricBundleData(
        degree=system.sig.genus - 1,
        points=tuple(
            (p.point_id, FilteredSpace((p.sl2_half_weight,))) for p in system.points
        ),
    )


def _omega_line(system: CanonicalTypeSystem) -> ParahoricBundleData:
    return ParahoricBundleData(
        degree=2 * system.sig.genus - 2,
        points=tuple((p.point_id, FilteredSpace((p.kappa,))) for p in system.points),
    )


def square_root_line(sig: Signature) -> ParahoricBundleData:
    """The square-root line of the canonical bundle: underlying degree
    g - 1 and weight kappa/2 at every marked point."""
    return _theta_line(canonical_type_system(sig))


def canonical_line(sig: Signature) -> ParahoricBundleData:
    """The canonical bundle as parahoric data: underlying degree 2g - 2 and
    weight kappa at every marked point."""
    return _omega_line(canonical_type_system(sig))


@dataclass(frozen=True)
class MaximalityReport:
    sig: Signature
    deg_omega: Fraction
    pardeg_theta: Fraction
    pardeg_theta_inv_omega: Fraction
    higgs_entry_is_degree_isomorphism: bool
    rank2_pdeg: Fraction
    sign_choice_invariant: bool


def maximality_certificate(sig: Signature) -> MaximalityReport:
    """Degree bookkeeping certifying maximality of the canonical object.

    The raising entry of the Higgs field maps the square-root line to its
    inverse twisted by the canonical bundle; both sides having the same
    parahoric degree (half of deg omega) is the degree-level content of
    that map being an isomorphism.  The rank-2 model has antisymmetric
    weights at every point and underlying degree zero, so its parahoric
    degree vanishes identically.
    """
    system = canonical_type_system(sig)
    deg_omega = canonical_degree(sig)
    theta = _theta_line(system)
    omega = _omega_line(system)
    pardeg_theta = pdeg(theta)

    theta_inv_omega = ParahoricBundleData(
        degree=-theta.degree + omega.degree,
        points=tuple(
            (pid, FilteredSpace((omega_fs.weights[0] - theta_fs.weights[0],)))
            for (pid, theta_fs), (_, omega_fs) in zip(theta.points, omega.points)
        ),
    )
    pardeg_twist = pdeg(theta_inv_omega)

    rank2 = ParahoricBundleData(
        degree=theta.degree + (-theta.degree),
        points=tuple(
            (pid, FilteredSpace((fs.weights[0], -fs.weights[0])))
            for pid, fs in theta.points
        ),
    )

    # the two SL2 lifts +-kappa/2 push out to the same PSL2 Weyl class
    sign_invariant = all(
        pushout_sl2_to_psl2(sl2_type(-p.sl2_half_weight)).same_class(p.psl2)
        and pushout_sl2_to_psl2(sl2_type(p.sl2_half_weight)).same_class(p.psl2)
        for p in system.points
    )

    return MaximalityReport(
        sig=sig,
        deg_omega=deg_omega,
        pardeg_theta=pardeg_theta,
        pardeg_theta_inv_omega=pardeg_twist,
        higgs_entry_is_degree_isomorphism=(pardeg_theta == pardeg_twist),
        rank2_pdeg=pdeg(rank2),
        sign_choice_invariant=sign_invariant,
    )
