"""The refinement poset of orbifold models over a fixed coarse curve.

A model assigns an order >= 2 to finitely many points of a coarse curve;
models are ordered by pointwise divisibility, with pointwise lcm as the
join.  Ramified covers are resolved to orbifold-etale covers by giving
each branch point the lcm of its ramification indices (or any multiple),
so that e_y * m_y = m_x at every preimage.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, lcm

from .errors import ResourceError, ValidationError
from .presentations import OrbiPresentation, presentation
from .signatures import Sector, Signature, classify_sector

DEFAULT_MAX_MODELS = 10**5


@dataclass(frozen=True)
class OrbifoldModel:
    """Coarse genus plus a finite order function on named points."""

    coarse_genus: int
    orders: tuple[tuple[str, int], ...]  # sorted by point id

    def __post_init__(self):
        if not isinstance(self.coarse_genus, int) or self.coarse_genus < 0:
            raise ValidationError("coarse genus must be a nonnegative integer")
        seen = set()
        for pid, m in self.orders:
            if not isinstance(m, int) or m < 2:
                raise ValidationError(f"order at {pid!r} must be an integer >= 2, got {m!r}")
            if pid in seen:
                raise ValidationError(f"duplicate point id {pid!r}")
            seen.add(pid)
        object.__setattr__(self, "orders", tuple(sorted(self.orders)))

    @classmethod
    def of(cls, coarse_genus: int, orders: dict[str, int]) -> "OrbifoldModel":
        return cls(coarse_genus, tuple(orders.items()))

    def order_at(self, pid: str) -> int:
        for q, m in self.orders:
            if q == pid:
                return m
        return 1

    def signature(self) -> Signature:
        return Signature(self.coarse_genus, tuple(m for _, m in self.orders), 0)

    def sector(self) -> Sector:
        return classify_sector(self.signature())

    def to_json(self) -> dict:
        return {"genus": self.coarse_genus, "orders": dict(self.orders)}

    @classmethod
    def from_json(cls, obj) -> "OrbifoldModel":
        if not isinstance(obj, dict) or "genus" not in obj:
            raise ValidationError("orbifold model object needs a 'genus' field")
        orders = obj.get("orders", {})
        if not isinstance(orders, dict):
            raise ValidationError("'orders' must map point ids to integers")
        return cls(obj["genus"], tuple(orders.items()))


def refines(fine: OrbifoldModel, coarse: OrbifoldModel) -> bool:
    """True when the coarse order divides the fine order at every point
    (a missing point counts as order 1)."""
    if fine.coarse_genus != coarse.coarse_genus:
        raise ValidationError("models live over coarse curves of different genus")
    return all(fine.order_at(pid) % m == 0 for pid, m in coarse.orders)


def common_refinement(a: OrbifoldModel, b: OrbifoldModel) -> OrbifoldModel:
    """Pointwise lcm: the join of the two models in the refinement order."""
    if a.coarse_genus != b.coarse_genus:
        raise ValidationError("models live over coarse curves of different genus")
    ids = {pid for pid, _ in a.orders} | {pid for pid, _ in b.orders}
    return OrbifoldModel.of(
        a.coarse_genus, {pid: lcm(a.order_at(pid), b.order_at(pid)) for pid in ids}
    )


@dataclass(frozen=True)
class RamifiedCoverData:
    """A finite cover recorded by its degree and ramification profiles."""

    degree: int
    branch_points: tuple[tuple[str, tuple[int, ...]], ...]

    def __post_init__(self):
        if not isinstance(self.degree, int) or self.degree < 1:
            raise ValidationError("covering degree must be a positive integer")
        seen = set()
        branches = []
        for pid, profile in self.branch_points:
            profile = tuple(profile)  # keep input order: source orders align with it
            if pid in seen:
                raise ValidationError(f"duplicate branch point {pid!r}")
            seen.add(pid)
            if any(not isinstance(e, int) or e < 1 for e in profile):
                raise ValidationError(f"profile at {pid!r} must be positive integers")
            if sum(profile) != self.degree:
                raise ValidationError(
                    f"profile at {pid!r} sums to {sum(profile)}, not the degree {self.degree}"
                )
            if all(e == 1 for e in profile):
                raise ValidationError(f"point {pid!r} is unramified; drop it from the data")
            branches.append((pid, profile))
        object.__setattr__(self, "branch_points", tuple(branches))

    @classmethod
    def from_json(cls, obj) -> "RamifiedCoverData":
        try:
            degree = obj["degree"]
            branches = tuple(
                (entry["point"], tuple(entry["profile"])) for entry in obj["branches"]
            )
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed cover data: {exc}") from None
        return cls(degree, branches)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "branches": [
                {"point": pid, "profile": list(profile)}
                for pid, profile in self.branch_points
            ],
        }


@dataclass(frozen=True)
class ResolvedCover:
    """Orbifold-etale resolution of a ramified cover.

    `target` carries order m_x at each branch point; `source_orders[pid]`
    lists m_y = m_x / e_y aligned with the profile; entries with m_y = 1
    are unramified points upstairs.  Branch points routed to cusps (an
    extension beyond the plain resolution) are listed in `source_cusps`.
    """

    target: OrbifoldModel
    source_orders: dict[str, tuple[int, ...]]
    source_cusps: dict[str, int]


def resolve_ramification(
    cover: RamifiedCoverData,
    coarse_genus: int = 0,
    multiplier: int = 1,
    cusp_points: frozenset[str] | set[str] = frozenset(),
) -> ResolvedCover:
    """Give each branch point the lcm of its ramification indices (times an
    optional multiplier: any common multiple yields a valid model; the lcm
    is the minimal choice).  Points in `cusp_points` become logarithmic
    instead: every preimage is reported as one cusp.
    """
    if not isinstance(multiplier, int) or multiplier < 1:
        raise ValidationError("multiplier must be a positive integer")
    unknown = set(cusp_points) - {pid for pid, _ in cover.branch_points}
    if unknown:
        raise ValidationError(f"cusp points {sorted(unknown)} are not branch points")
    orders = {}
    source_orders = {}
    source_cusps = {}
    for pid, profile in cover.branch_points:
        if pid in cusp_points:
            source_cusps[pid] = len(profile)
            continue
        m_x = lcm(*profile) * multiplier
        orders[pid] = m_x
        source_orders[pid] = tuple(m_x // e for e in profile)
    return ResolvedCover(
        target=OrbifoldModel.of(coarse_genus, orders),
        source_orders=source_orders,
        source_cusps=source_cusps,
    )


def enumerate_models(
    coarse_genus: int,
    point_budget: int,
    order_budget: int,
    max_models: int = DEFAULT_MAX_MODELS,
) -> list[tuple[OrbifoldModel, Sector]]:
    """All models with at most `point_budget` points and orders up to
    `order_budget`, tagged by sector, in canonical order (point count,
    then the order tuple).  Point ids are x1, x2, ...

    Raises ResourceError when more than `max_models` models would be
    emitted.
    """
    if point_budget < 0 or order_budget < 0:
        raise ValidationError("budgets must be nonnegative")
    choices = max(0, order_budget - 1)
    total = sum(comb(choices + k - 1, k) for k in range(point_budget + 1))
    if total > max_models:
        raise ResourceError(
            f"enumeration would emit {total} models (budget {max_models})"
        )

    out = []

    def emit(orders: tuple[int, ...]):
        model = OrbifoldModel.of(
            coarse_genus, {f"x{i + 1}": m for i, m in enumerate(orders)}
        )
        out.append((model, model.sector()))

    def extend(prefix: tuple[int, ...], smallest: int):
        if len(prefix) > 0:
            emit(prefix)
        if len(prefix) == point_budget:
            return
        for m in range(smallest, order_budget + 1):
            extend(prefix + (m,), m)

    emit(())
    extend((), 2)
    out.sort(key=lambda pair: (len(pair[0].orders), [m for _, m in pair[0].orders]))
    return out


@dataclass(frozen=True)
class ProSystemNode:
    model: OrbifoldModel
    signature: Signature
    pres: OrbiPresentation


def hyperbolic_prosystem_edges(
    models,
) -> tuple[list[ProSystemNode], list[tuple[int, int]]]:
    """Hasse diagram of the refinement order on hyperbolic models.

    Returns the nodes (each carrying its group presentation) and the
    cover-relation edges as (fine_index, coarse_index) pairs into the node
    list.  Rejects non-hyperbolic models.
    """
    models = list(models)
    for model in models:
        if model.sector() is not Sector.HYPERBOLIC:
            raise ValidationError(
                f"model {model.to_json()} is {model.sector().value}, not hyperbolic"
            )
    nodes = [
        ProSystemNode(model=m, signature=m.signature(), pres=presentation(m.signature()))
        for m in models
    ]
    n = len(models)
    proper = [
        [
            i != j and models[i] != models[j] and refines(models[i], models[j])
            for j in range(n)
        ]
        for i in range(n)
    ]
    edges = []
    for i in range(n):
        for j in range(n):
            if not proper[i][j]:
                continue
            # drop transitive edges: keep only covering relations
            if any(proper[i][k] and proper[k][j] for k in range(n)):
                continue
            edges.append((i, j))
    return nodes, edges
