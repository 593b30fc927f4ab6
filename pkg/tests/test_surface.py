import json
import math

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from reeb_orbit import (
    DataError,
    TopologyError,
    UnsupportedMap,
    load_mesh,
    remap,
    topology_summary,
    validate_simple_morse,
)
from reeb_orbit.models import square_mesh
from reeb_orbit.surface import PLSurface


def mesh_doc(vertices, triangles):
    return {
        "vertices": [{"id": i, "f": f} for i, f in vertices],
        "triangles": [{"v": list(v), "area": a} for v, a in triangles],
    }


def test_two_triangle_square_is_a_disk():
    doc = mesh_doc(
        [(1, 0.0), (2, 1.0), (3, 1.5), (4, 0.5)],
        [((1, 2, 3), 0.5), ((1, 3, 4), 0.5)],
    )
    s = load_mesh(json.dumps(doc))
    t = topology_summary(s)
    assert t.euler_characteristic == 1
    assert t.boundary_component_count == 1
    assert t.genus == 0
    assert t.total_area == 1.0


def test_nonmanifold_edge_rejected():
    doc = mesh_doc(
        [(1, 0.0), (2, 1.0), (3, 2.0), (4, 3.0), (5, 4.0)],
        [((1, 2, 3), 1.0), ((2, 1, 4), 1.0), ((1, 2, 5), 1.0)],
    )
    with pytest.raises(TopologyError):
        load_mesh(doc)


def test_inconsistent_orientation_rejected():
    doc = mesh_doc(
        [(1, 0.0), (2, 1.0), (3, 2.0), (4, 3.0)],
        [((1, 2, 3), 1.0), ((1, 2, 4), 1.0)],
    )
    with pytest.raises(TopologyError):
        load_mesh(doc)


def test_nonpositive_area_rejected():
    doc = mesh_doc([(1, 0.0), (2, 1.0), (3, 2.0)], [((1, 2, 3), 0.0)])
    with pytest.raises(DataError):
        load_mesh(doc)


def test_disconnected_mesh_rejected():
    doc = mesh_doc(
        [(i, float(i)) for i in range(1, 7)],
        [((1, 2, 3), 1.0), ((4, 5, 6), 1.0)],
    )
    with pytest.raises(TopologyError):
        load_mesh(doc)


def test_icosahedron_topology():
    # chi = V - E + F = 12 - 30 + 20 on the standard icosahedron
    phi = (1 + math.sqrt(5)) / 2
    pts = []
    for a, b in [(1, phi), (-1, phi), (1, -phi), (-1, -phi)]:
        pts += [(0, a, b), (a, b, 0), (b, 0, a)]
    pts = np.array(pts, dtype=float)
    hull = ConvexHull(pts)
    tris = []
    for simplex in hull.simplices:
        p = pts[simplex]
        n = np.cross(p[1] - p[0], p[2] - p[0])
        if np.dot(n, p.mean(axis=0)) < 0:
            simplex = simplex[[0, 2, 1]]
        tris.append((list(int(x) + 1 for x in simplex), 1.0))
    doc = mesh_doc([(i + 1, float(pts[i, 2] + 0.01 * i)) for i in range(12)], tris)
    t = topology_summary(load_mesh(doc))
    assert t.euler_characteristic == 2
    assert t.boundary_component_count == 0
    assert t.genus == 0


def test_disk_linear_field_validates(disk):
    rep = validate_simple_morse(disk)
    assert rep.is_simple_morse
    kinds = sorted(c.kind for c in rep.critical_points)
    assert kinds == ["boundary-max", "boundary-min"]
    values = {c.kind: c.f_value for c in rep.critical_points}
    assert values["boundary-min"] == pytest.approx(-1.0, abs=1e-2)
    assert values["boundary-max"] == pytest.approx(1.0, abs=1e-2)


def test_validation_is_pure(disk):
    r1 = validate_simple_morse(disk)
    r2 = validate_simple_morse(disk)
    assert r1.to_dict() == r2.to_dict()


def test_monkey_saddle_flagged():
    verts = [(0, 0.0)] + [(k + 1, (1.0 if k % 2 == 0 else -1.0) + 0.01 * k) for k in range(6)]
    tris = [((0, k + 1, (k + 1) % 6 + 1), 1.0) for k in range(6)]
    doc = mesh_doc(verts, tris)
    rep = validate_simple_morse(load_mesh(doc))
    assert not rep.is_simple_morse
    assert any(v.code == "DEGENERATE_CRITICAL" for v in rep.violations)


def test_duplicate_critical_values_flagged(disk):
    f = disk.f.copy()
    interior = [i for i in range(len(f)) if not disk.on_boundary[i]]
    f[interior[0]] = -5.0
    f[interior[-1]] = -5.0
    s = PLSurface(list(disk.vertex_ids), f, disk.triangles.copy(), disk.areas.copy(), disk.xy)
    rep = validate_simple_morse(s)
    assert any(v.code == "DUPLICATE_CRITICAL_VALUE" for v in rep.violations)


def test_chi_plus_boundary_even(disk, annulus, sphere):
    for s in (disk, annulus, sphere):
        t = topology_summary(s)
        assert (t.euler_characteristic + t.boundary_component_count) % 2 == 0


def test_remap_relabel_identity(disk):
    spec = {"kind": "relabel", "mapping": {i: i for i in disk.vertex_ids}}
    s2 = remap(disk, spec)
    assert s2.vertex_ids == disk.vertex_ids
    assert np.array_equal(s2.triangles, disk.triangles)
    assert s2.total_area == disk.total_area


def test_remap_refine_preserves_area(disk):
    s2 = remap(disk, {"kind": "refine"})
    assert len(s2.triangles) == 6 * len(disk.triangles)
    assert s2.total_area == pytest.approx(disk.total_area, rel=1e-12)
    assert validate_simple_morse(s2).is_simple_morse == validate_simple_morse(disk).is_simple_morse


def test_remap_shear_preserves_area_and_field(disk):
    s2 = remap(disk, {"kind": "shear", "factor": 0.3})
    assert s2.total_area == pytest.approx(disk.total_area, rel=1e-12)
    assert np.array_equal(s2.f, disk.f)


def test_remap_unknown_kind(disk):
    with pytest.raises(UnsupportedMap):
        remap(disk, {"kind": "rotate"})


def test_square_mesh_valid():
    s = square_mesh(3)
    assert validate_simple_morse(s).is_simple_morse
    t = topology_summary(s)
    assert (t.euler_characteristic, t.boundary_component_count) == (1, 1)
