"""Path geometry and kernel selection for hypergeometric transport.

The transport kernel exists twice: a compiled Cython extension and a
pure-Python twin.  The compiled one is preferred at import time; set
LOGORBI_KERNEL=python (or =compiled) to force a choice.  Both expose the
same `transport` contract, so everything above this module is
backend-agnostic.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

from . import _hyp_fallback
from .errors import GeometryError, NumericalAccuracyError, ValidationError

try:
    from . import _hyp_core
except ImportError:
    _hyp_core = None

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Segment:
    start: complex
    end: complex

    def encode(self):
        return (0, self.start, self.end, 0.0, 0.0, 0.0)

    def min_distance(self, point: complex) -> float:
        d = self.end - self.start
        L2 = abs(d) ** 2
        if L2 == 0.0:
            return abs(point - self.start)
        t = ((point - self.start) * d.conjugate()).real / L2
        t = min(1.0, max(0.0, t))
        return abs(point - (self.start + t * d))


@dataclass(frozen=True)
class Arc:
    """Circular arc around `center`, angles in radians, traversed from
    ang0 to ang1 (counterclockwise when ang1 > ang0)."""

    center: complex
    radius: float
    ang0: float
    ang1: float

    def encode(self):
        return (1, self.center, 0j, self.radius, self.ang0, self.ang1)

    def _covers_angle(self, phi: float) -> bool:
        sweep = self.ang1 - self.ang0
        if abs(sweep) >= _TWO_PI:
            return True
        if sweep >= 0:
            return (phi - self.ang0) % _TWO_PI <= sweep
        return (self.ang0 - phi) % _TWO_PI <= -sweep

    def min_distance(self, point: complex) -> float:
        rel = point - self.center
        if self._covers_angle(math.atan2(rel.imag, rel.real)):
            return abs(abs(rel) - self.radius)
        ends = (
            self.center + self.radius * complex(math.cos(self.ang0), math.sin(self.ang0)),
            self.center + self.radius * complex(math.cos(self.ang1), math.sin(self.ang1)),
        )
        return min(abs(point - e) for e in ends)


Path = tuple


def path_min_distance(path, points) -> float:
    return min(piece.min_distance(p) for piece in path for p in points)


def check_exclusion(path, singularities, radius: float) -> None:
    d = path_min_distance(path, singularities)
    if d < radius:
        raise GeometryError(
            f"integration path passes within {d:.6g} of a singularity "
            f"(exclusion radius {radius:g})"
        )


PYTHON_BACKEND = "python"
COMPILED_BACKEND = "compiled"


def available_backends() -> tuple[str, ...]:
    if _hyp_core is not None:
        return (COMPILED_BACKEND, PYTHON_BACKEND)
    return (PYTHON_BACKEND,)


def default_backend() -> str:
    forced = os.environ.get("LOGORBI_KERNEL")
    if forced:
        if forced not in (PYTHON_BACKEND, COMPILED_BACKEND):
            raise ValidationError(f"LOGORBI_KERNEL must be 'python' or 'compiled', got {forced!r}")
        if forced == COMPILED_BACKEND and _hyp_core is None:
            raise ValidationError("compiled kernel requested but not built")
        return forced
    return COMPILED_BACKEND if _hyp_core is not None else PYTHON_BACKEND


def _kernel(backend: str | None):
    backend = backend or default_backend()
    if backend == PYTHON_BACKEND:
        return _hyp_fallback.transport, backend
    if backend == COMPILED_BACKEND:
        if _hyp_core is None:
            raise ValidationError("compiled kernel requested but not built")
        return _hyp_core.transport, backend
    raise ValidationError(f"unknown kernel backend {backend!r}")


@dataclass(frozen=True)
class TransportResult:
    matrix: tuple[tuple[complex, complex], tuple[complex, complex]]
    accepted_steps: int
    rejected_steps: int
    backend: str


def transport_matrix(
    a,
    b,
    c,
    path,
    rtol: float,
    atol: float,
    max_steps: int = 10**6,
    backend: str | None = None,
) -> TransportResult:
    """Fundamental 2x2 matrix of the hypergeometric system along `path`.

    Column convention: a solution with value v at the start of the path
    continues to (matrix @ v) at its end.
    """
    if rtol <= 0 or atol <= 0:
        raise ValidationError("tolerances must be positive")
    kernel, name = _kernel(backend)
    pieces = [piece.encode() for piece in path]
    try:
        y00, y01, y10, y11, accepted, rejected = kernel(
            complex(a), complex(b), complex(c), pieces, rtol, atol, max_steps
        )
    except RuntimeError as exc:
        raise NumericalAccuracyError(str(exc)) from None
    return TransportResult(
        matrix=((y00, y01), (y10, y11)),
        accepted_steps=accepted,
        rejected_steps=rejected,
        backend=name,
    )
