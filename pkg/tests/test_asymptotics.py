import pytest

import reeb_orbit as ro
from reeb_orbit.extraction import fit_vertex_asymptotics, saddle_model_residuals
from reeb_orbit.models import dumbbell_sphere_mesh, parabolic_strip_mesh, sphere_mesh


def test_boundary_minimum_power_law():
    # area below the level grows like (4/3) t^{3/2} at the parabola vertex
    s = parabolic_strip_mesh(nx=48, ny=36)
    g = ro.extract_reeb(s, samples=64)
    v = min(g.vertices, key=lambda v: v.f)
    assert v.vtype == "I"
    fit = fit_vertex_asymptotics(g, v.id, window=16)
    assert fit.model == "sqrt"
    assert 1.45 <= fit.exponent_estimate <= 1.55
    assert fit.leading_coefficient == pytest.approx(4.0 / 3.0, rel=0.1)


def test_elliptic_vertex_linear_law(sphere):
    # spherical cap area is exactly 2*pi*h
    g = ro.extract_reeb(sphere, samples=64)
    v = min(g.vertices, key=lambda v: v.f)
    assert v.vtype == "VII"
    fit = fit_vertex_asymptotics(g, v.id, window=16)
    assert fit.model == "linear"
    assert 0.95 <= fit.exponent_estimate <= 1.05


def test_four_legged_saddle_prefers_log(pq_square):
    g = ro.extract_reeb(pq_square, samples=64)
    (v,) = [v for v in g.vertices if v.vtype == "IV"]
    log_res, power_res = saddle_model_residuals(g, v.id, window=16)
    assert log_res < 0.5 * power_res
    fit = fit_vertex_asymptotics(g, v.id, window=16)
    assert fit.model == "log"
    assert fit.residual == pytest.approx(log_res)


def test_interior_saddle_prefers_log():
    s = dumbbell_sphere_mesh(bands=36, sectors=36)
    g = ro.extract_reeb(s, samples=64)
    (v,) = [v for v in g.vertices if v.vtype == "VI"]
    log_res, power_res = saddle_model_residuals(g, v.id, window=16)
    assert log_res < 0.5 * power_res


def test_fits_improve_under_refinement():
    coarse = parabolic_strip_mesh(nx=32, ny=24)
    fine = parabolic_strip_mesh(nx=64, ny=48)
    errs = []
    for s in (coarse, fine):
        g = ro.extract_reeb(s, samples=64)
        v = min(g.vertices, key=lambda v: v.f)
        fit = fit_vertex_asymptotics(g, v.id, window=16)
        errs.append(abs(fit.exponent_estimate - 1.5))
    assert errs[1] < errs[0]


def test_insufficient_samples(sphere):
    g = ro.extract_reeb(sphere, samples=8)
    with pytest.raises(ro.InsufficientSamples):
        fit_vertex_asymptotics(g, g.vertices[0].id, window=50)
