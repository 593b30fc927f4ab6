#!/usr/bin/env python3
"""Regenerate the versioned fixture data files under src/reeb_orbit/data/.

The graph fixtures are the worked classification examples; the mesh fixture
is the unit disk with a linear field.  Files are deterministic, so a rerun
must reproduce them byte for byte.
"""

from pathlib import Path

from reeb_orbit import serialize
from reeb_orbit.fixtures import (
    closed_torus_graph,
    disk_linear_mesh,
    fig2_graph,
    fig4a_graph,
    fig4b_graph,
)

DATA = Path(__file__).resolve().parents[1] / "src" / "reeb_orbit" / "data"


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    graphs = {
        "fig2.json": fig2_graph(),
        "fig4a.json": fig4a_graph(),
        "fig4b.json": fig4b_graph(),
        "closed_torus.json": closed_torus_graph(),
    }
    for name, g in graphs.items():
        (DATA / name).write_text(serialize.dumps(serialize.graph_to_dict(g)))
        print("wrote", DATA / name)
    mesh = disk_linear_mesh()
    (DATA / "disk_linear.json").write_text(serialize.dumps(mesh.to_dict()))
    print("wrote", DATA / "disk_linear.json")


if __name__ == "__main__":
    main()
