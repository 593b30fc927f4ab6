"""Reference graphs and meshes used verbatim by the acceptance suite.

The four graph fixtures are the worked classification examples: the height
function on a torus with one hole (one saddle leg reaching the boundary
through the hole), the two all-dashed graphs that differ only in one cyclic
order and realize a disk with two holes versus a torus with one hole, and
the all-solid height graph of a closed torus.
"""

from __future__ import annotations

import math

import numpy as np

from .models import disk_mesh
from .reebgraph import (
    AS_IN_TABLE,
    F_REVERSED,
    MeasuredReebGraph,
    MeasureProfile,
    ReebEdge,
    ReebVertex,
)

_K = 16


def _profile(lo: float, hi: float, mass: float, phase: float = 0.0) -> MeasureProfile:
    """Strictly increasing cumulative samples from density 1 + sin(pi*u+phase)/2."""
    u = np.linspace(0.0, 1.0, _K + 1)
    cum = u + (0.5 / math.pi) * (np.cos(phase) - np.cos(math.pi * u + phase))
    cum = cum - cum[0]
    cum = cum / cum[-1] * mass
    cum[0] = 0.0
    return MeasureProfile(lo, hi, cum)


def fig2_graph() -> MeasuredReebGraph:
    """Torus with one hole, height field: V-saddle with one solid leg."""
    vertices = [
        ReebVertex(1, 0.0, "VII", AS_IN_TABLE),
        ReebVertex(2, 1.0, "VI", F_REVERSED),
        ReebVertex(3, 2.0, "III", F_REVERSED),
        ReebVertex(4, 3.0, "V", AS_IN_TABLE),
        ReebVertex(5, 4.0, "III", AS_IN_TABLE),
        ReebVertex(6, 5.0, "VII", F_REVERSED),
    ]
    edges = [
        ReebEdge(1, 1, 2, "solid", _profile(0.0, 1.0, 1.1, 0.1)),
        ReebEdge(2, 2, 3, "solid", _profile(1.0, 2.0, 0.8, 0.4)),
        ReebEdge(3, 2, 4, "solid", _profile(1.0, 3.0, 1.7, 0.7)),
        ReebEdge(4, 3, 4, "dashed", _profile(2.0, 3.0, 0.6, 1.0)),
        ReebEdge(5, 4, 5, "dashed", _profile(3.0, 4.0, 0.9, 1.3)),
        ReebEdge(6, 5, 6, "solid", _profile(4.0, 5.0, 1.2, 1.6)),
    ]
    g = MeasuredReebGraph(vertices, edges, {})
    g.validate()
    return g


def _fig4_graph(c_order: tuple[int, int, int]) -> MeasuredReebGraph:
    vertices = [
        ReebVertex(1, 0.0, "I", AS_IN_TABLE),
        ReebVertex(2, 1.0, "II", F_REVERSED),
        ReebVertex(3, 2.0, "II", F_REVERSED),
        ReebVertex(4, 3.0, "II", AS_IN_TABLE),
        ReebVertex(5, 4.0, "II", AS_IN_TABLE),
        ReebVertex(6, 5.0, "I", F_REVERSED),
    ]
    edges = [
        ReebEdge(1, 1, 2, "dashed", _profile(0.0, 1.0, 0.7, 0.2)),
        ReebEdge(2, 2, 3, "dashed", _profile(1.0, 2.0, 0.5, 0.5)),
        ReebEdge(3, 2, 4, "dashed", _profile(1.0, 3.0, 1.3, 0.8)),
        ReebEdge(4, 3, 5, "dashed", _profile(2.0, 4.0, 1.1, 1.1)),
        ReebEdge(5, 3, 4, "dashed", _profile(2.0, 3.0, 0.4, 1.4)),
        ReebEdge(6, 4, 5, "dashed", _profile(3.0, 4.0, 0.6, 1.7)),
        ReebEdge(7, 5, 6, "dashed", _profile(4.0, 5.0, 0.8, 2.0)),
    ]
    cyclic = {
        2: (1, 3, 2),
        3: c_order,
        4: (5, 3, 6),
        5: (4, 6, 7),
    }
    g = MeasuredReebGraph(vertices, edges, cyclic)
    g.validate()
    return g


def fig4a_graph() -> MeasuredReebGraph:
    """Disk with two holes: three boundary cycles."""
    return _fig4_graph((2, 5, 4))


def fig4b_graph() -> MeasuredReebGraph:
    """Torus with one hole: same graph, opposite cyclic order at one vertex."""
    return _fig4_graph((2, 4, 5))


def closed_torus_graph(total_moment_shift: float = 0.0) -> MeasuredReebGraph:
    """Height function on a closed torus: all solid, one independent cycle.

    Levels are centered so the total field moment vanishes;
    ``total_moment_shift`` displaces all levels to make it exactly that value.
    """
    total_mass = 1.0 + 0.9 + 0.9 + 1.0
    d = total_moment_shift / total_mass
    f = [-1.5 + d, -0.5 + d, 0.5 + d, 1.5 + d]
    vertices = [
        ReebVertex(1, f[0], "VII", AS_IN_TABLE),
        ReebVertex(2, f[1], "VI", F_REVERSED),
        ReebVertex(3, f[2], "VI", AS_IN_TABLE),
        ReebVertex(4, f[3], "VII", F_REVERSED),
    ]
    edges = [
        ReebEdge(1, 1, 2, "solid", _symmetric_profile(f[0], f[1], 1.0)),
        ReebEdge(2, 2, 3, "solid", _symmetric_profile(f[1], f[2], 0.9)),
        ReebEdge(3, 2, 3, "solid", _symmetric_profile(f[1], f[2], 0.9)),
        ReebEdge(4, 3, 4, "solid", _symmetric_profile(f[2], f[3], 1.0)),
    ]
    g = MeasuredReebGraph(vertices, edges, {})
    g.validate()
    return g


def _symmetric_profile(lo: float, hi: float, mass: float) -> MeasureProfile:
    """Profile with uniform density, so moments are exactly midpoint * mass."""
    u = np.linspace(0.0, 1.0, _K + 1)
    cum = u * mass
    cum[0] = 0.0
    return MeasureProfile(lo, hi, cum)


def disk_linear_mesh():
    """Unit disk mesh with the field equal to the first coordinate."""
    return disk_mesh()


ALL_GRAPH_FIXTURES = {
    "fig2": fig2_graph,
    "fig4a": fig4a_graph,
    "fig4b": fig4b_graph,
    "closed-torus": closed_torus_graph,
}
