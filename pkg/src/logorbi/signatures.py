"""Exact arithmetic of log-orbi signatures.

A log-orbi curve is recorded by its signature (g; m_1, ..., m_r; s): the
genus of the coarse curve, the orders of the orbifold points (each >= 2),
and the number of cusps.  Cusps are *not* encoded as an order m = infinity;
they are counted separately, matching the split between orbifold and
logarithmic boundary points.

Everything in this module is exact rational arithmetic.  Sector boundaries
are exact equalities, so no floating point is allowed anywhere here.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import ValidationError


class Sector(Enum):
    """Geometric trichotomy, keyed by the sign of the canonical degree."""

    SPHERICAL = "spherical"
    EUCLIDEAN = "euclidean"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class Signature:
    """Discrete data (genus; orbifold orders; cusp count) of a log-orbi curve.

    `orders` is kept sorted so that signatures compare as multisets.
    """

    genus: int
    orders: tuple[int, ...] = ()
    cusps: int = 0

    def __post_init__(self):
        if not isinstance(self.genus, int) or self.genus < 0:
            raise ValidationError(f"genus must be a nonnegative integer, got {self.genus!r}")
        if not isinstance(self.cusps, int) or self.cusps < 0:
            raise ValidationError(f"cusp count must be a nonnegative integer, got {self.cusps!r}")
        orders = tuple(self.orders)
        for m in orders:
            if not isinstance(m, int) or m < 2:
                raise ValidationError(f"orbifold orders must be integers >= 2, got {m!r}")
        object.__setattr__(self, "orders", tuple(sorted(orders)))

    def to_json(self) -> dict:
        return {"genus": self.genus, "orders": list(self.orders), "cusps": self.cusps}

    @classmethod
    def from_json(cls, obj) -> "Signature":
        if not isinstance(obj, dict):
            raise ValidationError(f"signature object expected, got {type(obj).__name__}")
        unknown = set(obj) - {"genus", "orders", "cusps"}
        if unknown:
            raise ValidationError(f"unknown signature fields: {sorted(unknown)}")
        try:
            genus = obj["genus"]
        except KeyError:
            raise ValidationError("signature object needs a 'genus' field") from None
        orders = obj.get("orders", [])
        if not isinstance(orders, list):
            raise ValidationError("'orders' must be a list of integers")
        return cls(genus=genus, orders=tuple(orders), cusps=obj.get("cusps", 0))


def euler_char(sig: Signature) -> Fraction:
    """Orbifold Euler characteristic 2 - 2g - s - sum_j (1 - 1/m_j)."""
    chi = Fraction(2 - 2 * sig.genus - sig.cusps)
    for m in sig.orders:
        chi -= 1 - Fraction(1, m)
    return chi


def canonical_degree(sig: Signature) -> Fraction:
    """Degree of the log-orbi canonical bundle; always equals -euler_char."""
    return -euler_char(sig)


def kappa(point) -> Fraction:
    """Local canonical coefficient: 1 - 1/m at an orbifold point of order m,
    and 1 at a cusp.

    `point` is either an integer order m >= 2 or the string "log".
    """
    if point == "log":
        return Fraction(1)
    if not isinstance(point, int):
        raise ValidationError(f"point kind must be an order >= 2 or 'log', got {point!r}")
    if point < 2:
        raise ValidationError(f"orbifold order must be >= 2, got {point}")
    return 1 - Fraction(1, point)


def classify_sector(sig: Signature) -> Sector:
    """Spherical / euclidean / hyperbolic by the sign of the canonical degree."""
    deg = canonical_degree(sig)
    if deg < 0:
        return Sector.SPHERICAL
    if deg == 0:
        return Sector.EUCLIDEAN
    return Sector.HYPERBOLIC


def is_hyperbolic(sig: Signature) -> bool:
    return classify_sector(sig) is Sector.HYPERBOLIC
