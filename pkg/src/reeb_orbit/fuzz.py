"""Random measured Reeb graphs and surface transformations for property tests.

Graphs are generated by simulating a sweep: a pool of active level families
(circles and segments) changes through randomly chosen birth, merge, split,
reconnection, and death events, each event becoming a vertex of the matching
type.  The construction guarantees every structural invariant by design and
keeps the graph connected by steering merges across components while
draining the pool.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from .levels import DSU
from .reebgraph import (
    AS_IN_TABLE,
    F_REVERSED,
    MeasuredReebGraph,
    MeasureProfile,
    ReebEdge,
    ReebVertex,
)
from .surface import PLSurface


@dataclass
class _Strand:
    sid: int
    style: str  # "solid" | "dashed"
    birth_event: int


def _random_profile(rng: random.Random, lo: float, hi: float, mass: float, samples: int) -> MeasureProfile:
    u = np.linspace(0.0, 1.0, samples + 1)
    omega = rng.choice([1.0, 2.0])
    phase = rng.uniform(0.0, 2.0 * math.pi)
    density = 1.0 + 0.7 * np.sin(math.pi * omega * u + phase)
    cum = np.concatenate([[0.0], np.cumsum((density[1:] + density[:-1]) / 2.0)])
    cum = cum / cum[-1] * mass
    cum[0] = 0.0
    return MeasureProfile(lo, hi, cum)


def random_measured_graph(
    seed: int,
    max_events: int = 8,
    samples: int = 12,
    allow_dashed: bool = True,
) -> MeasuredReebGraph:
    """Random valid measured Reeb graph, deterministic per seed."""
    for attempt in range(64):
        g = _try_random_graph(random.Random(seed * 100003 + attempt), max_events, samples, allow_dashed)
        if g is not None:
            return g
    raise RuntimeError(f"failed to build a connected random graph for seed {seed}")


def _try_random_graph(
    rng: random.Random, max_events: int, samples: int, allow_dashed: bool
) -> Optional[MeasuredReebGraph]:
    strands: list[_Strand] = []
    next_sid = 0
    events: list[tuple[str, str, list[_Strand], list[_Strand]]] = []
    conn = DSU()

    def spawn(style: str, event: int) -> _Strand:
        nonlocal next_sid
        s = _Strand(next_sid, style, event)
        next_sid += 1
        return s

    def record(vtype: str, orientation: str, consumed: list[_Strand], produced: list[_Strand]) -> int:
        idx = len(events)
        events.append((vtype, orientation, consumed, produced))
        for s in consumed:
            conn.union(("e", idx), ("e", s.birth_event))
        return idx

    circles = lambda: [s for s in strands if s.style == "solid"]  # noqa: E731
    segments = lambda: [s for s in strands if s.style == "dashed"]  # noqa: E731

    grow = rng.randrange(max_events // 2, max_events + 1)
    while len(events) < grow or strands:
        growing = len(events) < grow
        options: list[tuple[str, float]] = []
        cs, sg = circles(), segments()
        if growing:
            options.append(("birth_circle", 1.5))
            if allow_dashed:
                options.append(("birth_segment", 2.0))
            if cs:
                options.append(("split_circle", 2.0))
                if allow_dashed:
                    options.append(("circle_to_seg", 1.2))
            if sg:
                options.append(("split_seg", 1.5))
                options.append(("seg_to_circle", 1.0))
                options.append(("split_seg_circle", 1.2))
            if len(sg) >= 2:
                options.append(("reconnect", 1.5))
                options.append(("merge_segs", 1.0))
            if len(cs) >= 2:
                options.append(("merge_circles", 1.0))
            if cs and sg:
                options.append(("merge_circle_seg", 1.0))
        else:
            if len(cs) >= 2:
                options.append(("merge_circles", 2.0))
            if len(sg) >= 2:
                options.append(("merge_segs", 2.0))
            if cs and sg:
                options.append(("merge_circle_seg", 2.0))
            if cs:
                options.append(("close_circle", 1.0))
                if allow_dashed:
                    options.append(("circle_to_seg", 0.6))
            if sg:
                options.append(("close_segment", 1.0))
                options.append(("seg_to_circle", 0.4))
        if not options:
            break
        total = sum(w for _, w in options)
        pick = rng.uniform(0.0, total)
        acc = 0.0
        op = options[-1][0]
        for name, w in options:
            acc += w
            if pick <= acc:
                op = name
                break

        def choose(pool: list[_Strand], n: int) -> list[_Strand]:
            # prefer strands from distinct components to help connectivity
            if n == 2 and len(pool) >= 2:
                by_root: dict[Any, _Strand] = {}
                for s in pool:
                    by_root.setdefault(conn.find(("e", s.birth_event)), s)
                if len(by_root) >= 2:
                    roots = sorted(by_root, key=repr)[:2]
                    return [by_root[r] for r in rng.sample(roots, 2)]
            return rng.sample(pool, n)

        ev = len(events)
        if op == "birth_circle":
            strands.append(spawn("solid", record("VII", AS_IN_TABLE, [], [])))
        elif op == "birth_segment":
            strands.append(spawn("dashed", record("I", AS_IN_TABLE, [], [])))
        elif op == "close_circle":
            s = choose(circles(), 1)[0]
            strands.remove(s)
            record("VII", F_REVERSED, [s], [])
        elif op == "close_segment":
            s = choose(segments(), 1)[0]
            strands.remove(s)
            record("I", F_REVERSED, [s], [])
        elif op == "split_circle":
            s = choose(circles(), 1)[0]
            strands.remove(s)
            idx = record("VI", F_REVERSED, [s], [])
            strands.extend([spawn("solid", idx), spawn("solid", idx)])
        elif op == "merge_circles":
            pair = choose(circles(), 2)
            for s in pair:
                strands.remove(s)
            idx = record("VI", AS_IN_TABLE, pair, [])
            strands.append(spawn("solid", idx))
        elif op == "seg_to_circle":
            s = choose(segments(), 1)[0]
            strands.remove(s)
            idx = record("III", AS_IN_TABLE, [s], [])
            strands.append(spawn("solid", idx))
        elif op == "circle_to_seg":
            s = choose(circles(), 1)[0]
            strands.remove(s)
            idx = record("III", F_REVERSED, [s], [])
            strands.append(spawn("dashed", idx))
        elif op == "merge_circle_seg":
            c = choose(circles(), 1)[0]
            sgm = choose(segments(), 1)[0]
            strands.remove(c)
            strands.remove(sgm)
            idx = record("V", AS_IN_TABLE, [c, sgm], [])
            strands.append(spawn("dashed", idx))
        elif op == "split_seg_circle":
            s = choose(segments(), 1)[0]
            strands.remove(s)
            idx = record("V", F_REVERSED, [s], [])
            strands.extend([spawn("solid", idx), spawn("dashed", idx)])
        elif op == "merge_segs":
            pair = choose(segments(), 2)
            for s in pair:
                strands.remove(s)
            idx = record("II", AS_IN_TABLE, pair, [])
            strands.append(spawn("dashed", idx))
        elif op == "split_seg":
            s = choose(segments(), 1)[0]
            strands.remove(s)
            idx = record("II", F_REVERSED, [s], [])
            strands.extend([spawn("dashed", idx), spawn("dashed", idx)])
        elif op == "reconnect":
            pair = choose(segments(), 2)
            for s in pair:
                strands.remove(s)
            idx = record("IV", AS_IN_TABLE, pair, [])
            strands.extend([spawn("dashed", idx), spawn("dashed", idx)])
        else:
            raise AssertionError(op)
        if len(events) > 4 * max_events + 8:
            return None

    if strands or len(events) < 2:
        return None
    roots = {conn.find(("e", i)) for i in range(len(events))}
    if len(roots) != 1:
        return None

    # assemble: vertices at jittered increasing levels
    fvals = [i + rng.uniform(-0.2, 0.2) for i in range(len(events))]
    vertices = [
        ReebVertex(i + 1, fvals[i], events[i][0], events[i][1]) for i in range(len(events))
    ]

    # edges: need, for each event, which strands it consumed/produced
    produced_at: dict[int, list[_Strand]] = {}
    consumed_at: dict[int, list[_Strand]] = {}
    all_strands: dict[int, _Strand] = {}
    for idx, (_, _, consumed, _) in enumerate(events):
        for s in consumed:
            consumed_at.setdefault(idx, []).append(s)
            all_strands[s.sid] = s
    # strands are born at their birth_event; recover the produced lists
    for s in all_strands.values():
        produced_at.setdefault(s.birth_event, []).append(s)

    death_of: dict[int, int] = {}
    for idx, lst in consumed_at.items():
        for s in lst:
            death_of[s.sid] = idx

    edges = []
    strand_edge: dict[int, int] = {}
    for sid in sorted(all_strands):
        s = all_strands[sid]
        eid = len(edges) + 1
        tail, head = s.birth_event, death_of[s.sid]
        mass = random.Random(sid * 1000033 + tail * 1013 + head).uniform(0.4, 2.0)
        prof = _random_profile(rng, fvals[tail], fvals[head], mass, samples)
        edges.append(ReebEdge(eid, tail + 1, head + 1, s.style, prof))
        strand_edge[sid] = eid

    cyclic: dict[int, tuple[int, ...]] = {}
    for idx, (vtype, orientation, consumed, _) in enumerate(events):
        produced = produced_at.get(idx, [])
        if vtype == "II":
            below = [strand_edge[s.sid] for s in consumed]
            above = [strand_edge[s.sid] for s in produced if s.style == "dashed"]
            trio = below + above
            order = (trio[0], trio[1], trio[2]) if rng.random() < 0.5 else (trio[0], trio[2], trio[1])
            cyclic[idx + 1] = order
        elif vtype == "IV":
            b = [strand_edge[s.sid] for s in consumed]
            a = [strand_edge[s.sid] for s in produced]
            if rng.random() < 0.5:
                cyclic[idx + 1] = (b[0], a[0], b[1], a[1])
            else:
                cyclic[idx + 1] = (b[0], a[1], b[1], a[0])

    g = MeasuredReebGraph(vertices, edges, cyclic)
    g.validate()
    return g


def random_remap_spec(rng: random.Random, s: PLSurface) -> dict[str, Any]:
    """One of the supported area-preserving test transformations."""
    kinds = ["relabel", "refine"]
    if s.xy is not None:
        kinds.append("shear")
    kind = rng.choice(kinds)
    if kind == "relabel":
        ids = list(s.vertex_ids)
        shuffled = ids[:]
        rng.shuffle(shuffled)
        return {"kind": "relabel", "mapping": dict(zip(ids, shuffled))}
    if kind == "shear":
        return {"kind": "shear", "factor": rng.uniform(-0.5, 0.5)}
    return {"kind": "refine"}


def run_property_suite(cases: int, seed: int) -> dict[str, Any]:
    """Deterministic fuzz battery used by the command line."""
    from . import graph_core
    from .circulation import solve_circulations
    from .equivalence import match_measured
    from .extraction import extract_reeb
    from .realization import realize

    counts = {
        "cases": cases,
        "homology_identity": 0,
        "solve_dimension": 0,
        "solve_existence": 0,
        "roundtrip": 0,
        "sigma_matches_boundary": 0,
        "failures": [],
    }
    for i in range(cases):
        g = random_measured_graph(seed * 1000003 + i, allow_dashed=(i % 7 != 3))
        dims = graph_core.homology_dims(g)
        if dims.h0_dashed > 0:
            if dims.h1_rel + dims.h1_dashed == dims.h1_gamma + dims.h0_dashed - 1:
                counts["homology_identity"] += 1
            else:
                counts["failures"].append((i, "homology_identity"))
        else:
            counts["homology_identity"] += 1
        res = solve_circulations(g)
        lo, hi = g.f_range()
        tol = 1e-9 * max(1.0, g.total_mass) * max(1.0, hi - lo)
        from .circulation import total_moment

        should_exist = bool(g.dashed_edges()) or abs(total_moment(g)) <= tol
        if res.exists == should_exist:
            counts["solve_existence"] += 1
        else:
            counts["failures"].append((i, "solve_existence"))
        if not res.exists or len(res.basis) == dims.h1_rel:
            counts["solve_dimension"] += 1
        else:
            counts["failures"].append((i, "solve_dimension"))
        try:
            surf = realize(g, resolution=6).surface
            g2 = extract_reeb(surf, samples=g.edges[0].profile.samples)
            if match_measured(g, g2, tol_mass=1e-6).ok:
                counts["roundtrip"] += 1
            else:
                counts["failures"].append((i, "roundtrip"))
            from .surface import topology_summary

            if graph_core.sigma(g2) == topology_summary(surf).boundary_component_count:
                counts["sigma_matches_boundary"] += 1
            else:
                counts["failures"].append((i, "sigma"))
        except Exception as exc:  # pragma: no cover - surfaced in the report
            counts["failures"].append((i, f"realize/extract: {type(exc).__name__}: {exc}"))
    counts["passed"] = not counts["failures"]
    return counts
