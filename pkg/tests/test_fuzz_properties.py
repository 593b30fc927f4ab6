"""Property-based suites over randomly generated measured Reeb graphs."""

import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

import reeb_orbit as ro
from reeb_orbit.circulation import check_circulation, solve_circulations, total_moment
from reeb_orbit.fuzz import random_measured_graph
from reeb_orbit.graph_core import boundary_cycles, homology_dims, sigma
from reeb_orbit.reebgraph import MeasuredReebGraph

PROPERTY_SETTINGS = settings(
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)

seeds = st.integers(min_value=0, max_value=10**6)


@given(seeds)
@PROPERTY_SETTINGS
def test_generated_graphs_are_valid(seed):
    g = random_measured_graph(seed)
    g.validate()


@given(seeds)
@PROPERTY_SETTINGS
def test_homology_pair_identity(seed):
    g = random_measured_graph(seed)
    dims = homology_dims(g)
    if dims.h0_dashed > 0:
        assert dims.h1_rel + dims.h1_dashed == dims.h1_gamma + dims.h0_dashed - 1
    else:
        assert dims.h1_rel == dims.h1_gamma


@given(seeds)
@PROPERTY_SETTINGS
def test_dashed_edges_appear_twice_in_cycles(seed):
    g = random_measured_graph(seed)
    count = {}
    for c in boundary_cycles(g):
        for eid in c.edges:
            count[eid] = count.get(eid, 0) + 1
    assert count == {e.id: 2 for e in g.dashed_edges()}


@given(seeds)
@PROPERTY_SETTINGS
def test_sigma_invariant_under_relabeling(seed):
    g = random_measured_graph(seed)
    vmap = {v.id: 1000 - v.id for v in g.vertices}
    emap = {e.id: e.id + 500 for e in g.edges}
    g2 = MeasuredReebGraph(
        [type(v)(vmap[v.id], v.f, v.vtype, v.orientation) for v in g.vertices],
        [
            type(e)(emap[e.id], vmap[e.tail], vmap[e.head], e.style, e.profile)
            for e in g.edges
        ],
        {vmap[v]: tuple(emap[x] for x in o) for v, o in g.cyclic_orders.items()},
    )
    assert sigma(g2) == sigma(g)


@given(seeds)
@PROPERTY_SETTINGS
def test_solve_space_dimension_and_validity(seed):
    g = random_measured_graph(seed)
    res = solve_circulations(g)
    dims = homology_dims(g)
    lo, hi = g.f_range()
    tol = 1e-9 * max(1.0, g.total_mass) * max(1.0, hi - lo)
    assert res.exists == (bool(g.dashed_edges()) or abs(total_moment(g)) <= tol)
    if res.exists:
        assert len(res.basis) == dims.h1_rel
        assert check_circulation(g, res.particular).ok
        for delta in res.basis:
            shifted = res.particular.shifted(delta, 1.7)
            assert check_circulation(g, shifted).ok


@given(seeds)
@PROPERTY_SETTINGS
def test_match_is_reflexive(seed):
    g = random_measured_graph(seed)
    assert ro.match_measured(g, g).ok


def euler_census(g) -> int:
    """Independent Euler characteristic prediction from the vertex census.

    Summing compactly supported Euler characteristics over the level-set
    strata: singular fibers contribute 1 for point and tree types (I, II,
    IV, VII), 0 for types with one loop (III, V), -1 for the figure-eight
    (VI); every open dashed strip contributes -1, solid cylinders 0.
    """
    counts = {t: 0 for t in ("I", "II", "III", "IV", "V", "VI", "VII")}
    for v in g.vertices:
        counts[v.vtype] += 1
    fibers = (
        counts["I"] + counts["II"] + counts["IV"] + counts["VII"] - counts["VI"]
    )
    return fibers - len(g.dashed_edges())


@given(st.integers(min_value=0, max_value=200))
@settings(max_examples=25, deadline=None)
def test_roundtrip_and_boundary_count(seed):
    g = random_measured_graph(seed)
    surf = ro.realize(g, resolution=6).surface
    assert ro.validate_simple_morse(surf).is_simple_morse
    g2 = ro.extract_reeb(surf, samples=g.edges[0].profile.samples)
    assert ro.match_measured(g, g2, tol_mass=1e-6).ok
    t = ro.topology_summary(surf)
    assert sigma(g) == t.boundary_component_count
    assert t.euler_characteristic == euler_census(g)


@given(seeds)
@PROPERTY_SETTINGS
def test_profiles_strictly_increasing(seed):
    g = random_measured_graph(seed)
    for e in g.edges:
        assert np.all(np.diff(e.profile.cumulative) > 0)


@given(seeds)
@PROPERTY_SETTINGS
def test_boundary_cycle_reversal_parity(seed):
    # the restricted field has equally many minima and maxima along each
    # boundary circle: direction reversals of the walk come in pairs and
    # happen only where the boundary actually turns (types I, II, III)
    g = random_measured_graph(seed)
    for c in boundary_cycles(g):
        n = len(c)
        reversals = []
        for i in range(n):
            prev_edge = g.edge(c.edges[i - 1])
            next_edge = g.edge(c.edges[i])
            v = c.vertices[i]
            same_side = (prev_edge.head == v) == (next_edge.head == v)
            if same_side:
                reversals.append(g.vertex(v).vtype)
        assert len(reversals) % 2 == 0
        assert set(reversals) <= {"I", "II", "III"}
