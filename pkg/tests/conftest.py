import pytest

from reeb_orbit.fixtures import (
    closed_torus_graph,
    fig2_graph,
    fig4a_graph,
    fig4b_graph,
)
from reeb_orbit.models import (
    annulus_mesh,
    disk_mesh,
    pq_square_mesh,
    sphere_mesh,
    tilted_cylinder_mesh,
    torus_with_hole_mesh,
)


@pytest.fixture(scope="session")
def fig2():
    return fig2_graph()


@pytest.fixture(scope="session")
def fig4a():
    return fig4a_graph()


@pytest.fixture(scope="session")
def fig4b():
    return fig4b_graph()


@pytest.fixture(scope="session")
def closed_torus():
    return closed_torus_graph()


@pytest.fixture(scope="session")
def disk():
    return disk_mesh()


@pytest.fixture(scope="session")
def annulus():
    return annulus_mesh()


@pytest.fixture(scope="session")
def sphere():
    return sphere_mesh()


@pytest.fixture(scope="session")
def cylinder():
    return tilted_cylinder_mesh()


@pytest.fixture(scope="session")
def pq_square():
    return pq_square_mesh()


@pytest.fixture(scope="session")
def torus_with_hole():
    return torus_with_hole_mesh()
