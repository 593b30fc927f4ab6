"""Pure combinatorics on measured Reeb graphs.

Boundary cycles follow the successor rule along dashed edges: at a vertex
with a recorded cyclic order the walk leaves along the cyclic successor of
the arriving edge, at a single dashed edge it bounces, at exactly two dashed
edges it crosses.  The walk states (edge, travel direction) split into
disjoint orbits, one per boundary component of any realizing surface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import NonIntegerFormulaValue
from .levels import DSU
from .reebgraph import MeasuredReebGraph
from .surface import TopologySummary


@dataclass(frozen=True)
class BoundaryCycle:
    """Closed dashed walk: edges[i] joins vertices[i] to vertices[i+1]."""

    edges: tuple[int, ...]
    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)


def _successor(g: MeasuredReebGraph, eid: int, at_vertex: int) -> int:
    """Edge the boundary walk leaves along after arriving at a vertex."""
    order = g.cyclic_orders.get(at_vertex)
    if order is not None:
        return order[(order.index(eid) + 1) % len(order)]
    dashed = [e.id for e in g.dashed_edges_at(at_vertex)]
    if len(dashed) == 1:
        return eid
    if len(dashed) == 2:
        return dashed[0] if dashed[1] == eid else dashed[1]
    raise AssertionError("vertex with >=3 dashed edges lacks a cyclic order")


def _orbit(g: MeasuredReebGraph, state: tuple[int, int]) -> list[tuple[int, int]]:
    """Orbit of (edge id, vertex the edge is travelled towards)."""
    states = [state]
    cur = state
    while True:
        eid, v = cur
        nxt_e = _successor(g, eid, v)
        nxt_v = g.other_end(g.edge(nxt_e), v)
        cur = (nxt_e, nxt_v)
        if cur == state:
            return states
        states.append(cur)


def _canonical_cycle(pairs: list[tuple[int, int]]) -> BoundaryCycle:
    """Lexicographically smallest rotation, anchored at (vertex, edge) pairs."""
    n = len(pairs)
    # pairs[i] = (e_i, v_{i+1}); source vertex of e_i is v_i = pairs[i-1][1]
    seq = [(pairs[i - 1][1], pairs[i][0]) for i in range(n)]
    best = min(range(n), key=lambda k: [seq[(k + i) % n] for i in range(n)])
    edges = tuple(pairs[(best + i) % n][0] for i in range(n))
    vertices = tuple(pairs[(best + i - 1) % n][1] for i in range(n))
    return BoundaryCycle(edges, vertices)


def boundary_cycles(g: MeasuredReebGraph) -> list[BoundaryCycle]:
    """One representative per equivalence class of boundary cycles.

    Orbits are deduplicated by rotation always; a reversed orbit is identified
    with its mirror exactly when every vertex on the cycle is of type III or
    IV, matching the stated equivalence.
    """
    states = []
    for e in g.dashed_edges():
        states.append((e.id, e.head))
        states.append((e.id, e.tail))
    states.sort()
    seen: set[tuple[int, int]] = set()
    cycles: list[BoundaryCycle] = []
    for st in states:
        if st in seen:
            continue
        orbit = _orbit(g, st)
        seen.update(orbit)
        cycle = _canonical_cycle(orbit)
        if all(g.vertex(v).vtype in ("III", "IV") for v in cycle.vertices):
            # reversal applies: canonical representative is the smaller of the
            # two directions, and the mirror class is not counted again
            reversed_pairs = [
                (cycle.edges[i], cycle.vertices[i]) for i in range(len(cycle))
            ][::-1]
            mirror = _canonical_cycle(reversed_pairs)
            if mirror in cycles or cycle in cycles:
                continue
            if (mirror.vertices, mirror.edges) < (cycle.vertices, cycle.edges):
                cycle = mirror
        cycles.append(cycle)
    return cycles


def sigma(g: MeasuredReebGraph) -> int:
    """Number of boundary cycle classes; the boundary component count."""
    return len(boundary_cycles(g))


@dataclass(frozen=True)
class HomologyDims:
    h1_gamma: int
    h1_dashed: int
    h1_rel: int
    h0_dashed: int
    h0_solid: int
    h0_intersection: int

    def to_dict(self) -> dict[str, int]:
        return {
            "h1_gamma": self.h1_gamma,
            "h1_dashed": self.h1_dashed,
            "h1_rel": self.h1_rel,
            "h0_dashed": self.h0_dashed,
            "h0_solid": self.h0_solid,
            "h0_intersection": self.h0_intersection,
        }


def _subgraph_dims(vertices: set[int], edges: list[tuple[int, int]]) -> tuple[int, int]:
    """(h0, h1) of a graph given as vertex set plus edge endpoint pairs."""
    if not vertices:
        return 0, 0
    dsu = DSU()
    for v in sorted(vertices):
        dsu.find(v)
    for a, b in edges:
        dsu.union(a, b)
    h0 = len({dsu.find(v) for v in vertices})
    h1 = len(edges) - len(vertices) + h0
    return h0, h1


def homology_dims(g: MeasuredReebGraph) -> HomologyDims:
    """Betti numbers of the graph, its styled subgraphs, and the pair.

    The relative dimension follows the long exact sequence of the pair:
    with a connected total graph and nonempty dashed part,
    h1_rel = h1_gamma - h1_dashed + h0_dashed - 1.
    """
    all_vs = {v.id for v in g.vertices}
    all_es = [(e.tail, e.head) for e in g.edges]
    _, h1_gamma = _subgraph_dims(all_vs, all_es)

    solid = g.solid_edges()
    dashed = g.dashed_edges()
    solid_vs = {e.tail for e in solid} | {e.head for e in solid}
    dashed_vs = {e.tail for e in dashed} | {e.head for e in dashed}
    h0_solid, _ = _subgraph_dims(solid_vs, [(e.tail, e.head) for e in solid])
    h0_dashed, h1_dashed = _subgraph_dims(dashed_vs, [(e.tail, e.head) for e in dashed])
    h0_inter = len(solid_vs & dashed_vs)

    if dashed:
        h1_rel = h1_gamma - h1_dashed + h0_dashed - 1
    else:
        h1_rel = h1_gamma
    return HomologyDims(h1_gamma, h1_dashed, h1_rel, h0_dashed, h0_solid, h0_inter)


def genus(g: MeasuredReebGraph, method: str = "realize") -> int:
    """Genus of the realizing surface.

    ``realize`` builds a surface and reads the genus off its topology, which
    is convention-free.  ``formula`` evaluates the closed formula with plain
    Euler characteristics and component counts; on several fixtures this
    yields non-integer or off-by-one values and is kept as a diagnostic only.
    """
    if method == "realize":
        from .realization import surface_of

        return surface_of(g).genus
    if method == "formula":
        value = genus_formula_value(g)
        if abs(value - round(value)) > 1e-9:
            raise NonIntegerFormulaValue(value)
        return int(round(value))
    raise ValueError(f"unknown genus method {method!r}")


def genus_formula_value(g: MeasuredReebGraph) -> float:
    """Raw value of the closed genus formula under the naive conventions."""
    solid = g.solid_edges()
    dashed = g.dashed_edges()
    solid_vs = {e.tail for e in solid} | {e.head for e in solid}
    dashed_vs = {e.tail for e in dashed} | {e.head for e in dashed}
    chi_s = len(solid_vs) - len(solid)
    chi_d = len(dashed_vs) - len(dashed)
    h0_s, _ = _subgraph_dims(solid_vs, [(e.tail, e.head) for e in solid])
    h0_d, _ = _subgraph_dims(dashed_vs, [(e.tail, e.head) for e in dashed])
    h0_inter = len(solid_vs & dashed_vs)
    sig = sigma(g)
    return (
        -chi_s
        + (-chi_d + 5 * h0_inter - sig) / 2.0
        - h0_s
        - h0_d
        + 3.0
    )


@dataclass(frozen=True)
class CompatibilityResult:
    compatible: bool
    failures: tuple[str, ...]


def compatibility(
    g: MeasuredReebGraph, t: TopologySummary, rel_tol: float = 1e-9
) -> CompatibilityResult:
    """Whether the graph can live on a surface with the given topology.

    Checks genus, boundary component count (via boundary cycles), and total
    measure against total area.
    """
    failures = []
    if genus(g) != t.genus:
        failures.append("genus")
    if sigma(g) != t.boundary_component_count:
        failures.append("boundary_components")
    if not math.isclose(g.total_mass, t.total_area, rel_tol=rel_tol, abs_tol=0.0):
        failures.append("total_measure")
    return CompatibilityResult(not failures, tuple(failures))


def orbit_moduli_dimension(g: MeasuredReebGraph) -> int:
    """Dimension of the space of orbits sharing this measured graph."""
    dims = homology_dims(g)
    return dims.h1_rel + dims.h1_dashed
