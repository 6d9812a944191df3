from random import Random

import pytest

from logorbi.errors import ResourceError, ValidationError
from logorbi.orbposet import (
    OrbifoldModel,
    RamifiedCoverData,
    common_refinement,
    enumerate_models,
    hyperbolic_prosystem_edges,
    refines,
    resolve_ramification,
)
from logorbi.signatures import Sector, Signature


def M(genus=0, **orders):
    return OrbifoldModel.of(genus, orders)


def test_refines_examples():
    assert refines(M(x=6), M(x=3))
    assert not refines(M(x=4), M(x=3))
    assert refines(M(x=4, y=3), M())  # everything refines the trivial model
    with pytest.raises(ValidationError):
        refines(M(x=2), OrbifoldModel.of(1, {"x": 2}))


def test_common_refinement_examples():
    assert common_refinement(M(x=2), M(x=3)) == M(x=6)
    a = M(x=4, y=3)
    assert common_refinement(a, a) == a
    assert common_refinement(M(x=4, y=3), M(y=2)) == M(x=4, y=6)


def test_poset_laws_exhaustive():
    models = [pair[0] for pair in enumerate_models(0, 2, 4)]
    for a in models:
        assert refines(a, a)
        for b in models:
            if refines(a, b) and refines(b, a):
                assert a == b
            join = common_refinement(a, b)
            assert refines(join, a) and refines(join, b)
            for c in models:
                if refines(a, b) and refines(b, c):
                    assert refines(a, c)
                # join is the least common refinement
                if refines(c, a) and refines(c, b):
                    assert refines(c, join)


def test_resolution_examples():
    cover = RamifiedCoverData(5, (("x", (2, 3)),))
    resolved = resolve_ramification(cover)
    assert resolved.target == M(x=6)
    assert resolved.source_orders["x"] == (3, 2)  # aligned with the profile

    cover = RamifiedCoverData(4, (("x", (2, 2)),))
    resolved = resolve_ramification(cover)
    assert resolved.target == M(x=2)
    assert resolved.source_orders["x"] == (1, 1)

    cover = RamifiedCoverData(7, (("x", (7,)),))
    resolved = resolve_ramification(cover)
    assert resolved.target == M(x=7)
    assert resolved.source_orders["x"] == (1,)


def test_cover_data_validation():
    with pytest.raises(ValidationError):
        RamifiedCoverData(4, (("x", (2, 3)),))  # profile does not sum to degree
    with pytest.raises(ValidationError):
        RamifiedCoverData(3, (("x", (1, 1, 1)),))  # unramified point
    with pytest.raises(ValidationError):
        RamifiedCoverData(0, ())


def test_resolution_etale_condition_random():
    rng = Random(3)
    for _ in range(500):
        degree = rng.randint(2, 30)
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
        sorted_profile = cover.branch_points[0][1]
        for e, m_y in zip(sorted_profile, resolved.source_orders["x"]):
            assert e * m_y == m_x
        # minimality: every valid target order is a multiple of this one
        for k in (2, 3):
            bigger = resolve_ramification(cover, multiplier=k)
            assert bigger.target.order_at("x") == k * m_x
            assert refines(bigger.target, resolved.target)


def test_resolution_cusp_routing():
    cover = RamifiedCoverData(5, (("x", (2, 3)), ("y", (5,))))
    resolved = resolve_ramification(cover, cusp_points={"y"})
    assert resolved.target == M(x=6)
    assert resolved.source_cusps == {"y": 1}
    with pytest.raises(ValidationError):
        resolve_ramification(cover, cusp_points={"z"})


def test_enumerate_models_genus0():
    tagged = enumerate_models(0, 3, 7)
    by_sig = {tuple(m for _, m in model.orders): sector for model, sector in tagged}
    assert by_sig[(2, 3, 7)] is Sector.HYPERBOLIC
    assert by_sig[(2, 3, 6)] is Sector.EUCLIDEAN
    assert by_sig[(2, 3, 5)] is Sector.SPHERICAL
    assert by_sig[()] is Sector.SPHERICAL


def test_enumerate_models_higher_genus():
    for model, sector in enumerate_models(1, 2, 5):
        if not model.orders:
            assert sector is Sector.EUCLIDEAN
        else:
            assert sector is Sector.HYPERBOLIC
    assert all(sector is Sector.HYPERBOLIC for _, sector in enumerate_models(2, 2, 5))


def test_enumerate_models_budget():
    with pytest.raises(ResourceError):
        enumerate_models(0, 8, 40, max_models=1000)
    with pytest.raises(ValidationError):
        enumerate_models(0, -1, 5)


def test_prosystem_single_node():
    nodes, edges = hyperbolic_prosystem_edges([M(x=2, y=3, z=7)])
    assert edges == []
    assert len(nodes) == 1
    assert nodes[0].signature == Signature(0, (2, 3, 7))
    assert nodes[0].pres.generators == ("c1", "c2", "c3")


def test_prosystem_edges_divisibility():
    a = OrbifoldModel.of(1, {"x": 2})
    b = OrbifoldModel.of(1, {"x": 4})
    nodes, edges = hyperbolic_prosystem_edges([a, b])
    assert edges == [(1, 0)]  # finer {x:4} covers coarser {x:2}

    c = OrbifoldModel.of(1, {"x": 3})
    nodes, edges = hyperbolic_prosystem_edges([b, c])
    assert edges == []  # incomparable orders


def test_prosystem_hasse_reduction():
    chain = [OrbifoldModel.of(1, {"x": m}) for m in (2, 4, 8)]
    nodes, edges = hyperbolic_prosystem_edges(chain)
    assert set(edges) == {(1, 0), (2, 1)}  # no transitive (2, 0) edge


def test_prosystem_rejects_non_hyperbolic():
    with pytest.raises(ValidationError):
        hyperbolic_prosystem_edges([M()])


def test_sector_monotone_under_refinement():
    # orders only grow along refinements, so hyperbolic models stay
    # hyperbolic in any refinement
    models = [pair[0] for pair in enumerate_models(0, 3, 6)]
    for a in models:
        for b in models:
            if refines(a, b) and b.sector() is Sector.HYPERBOLIC:
                assert a.sector() is Sector.HYPERBOLIC


def test_prosystem_nodes_feed_subgroup_enumeration():
    # finite-quotient evidence along the pro-system: node presentations
    # plug straight into the bounded subgroup search
    from logorbi.coset_enum import low_index_subgroups

    a = OrbifoldModel.of(1, {"x": 2})
    b = OrbifoldModel.of(1, {"x": 4})
    nodes, edges = hyperbolic_prosystem_edges([a, b])
    assert edges == [(1, 0)]
    for node in nodes:
        tables = low_index_subgroups(node.pres, 2)
        assert tables and all(t.index in (1, 2) for t in tables)


def test_cross_module_cover_consistency():
    from propgen import check_cover_resolution_consistency

    check_cover_resolution_consistency(Random(1234), 100)


def test_model_json_round_trip():
    model = M(1, x=2, y=6)

    assert OrbifoldModel.from_json(model.to_json()) == model
    cover = RamifiedCoverData(5, (("x", (2, 3)),))
    assert RamifiedCoverData.from_json(cover.to_json()) == cover
