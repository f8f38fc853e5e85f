import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from aoweno.mesh import (
    Boundary, BoundarySpec, ConfigurationError, DMRStates, Grid, apply_boundaries,
    interface_fluxes_1d, make_rhs, pad, rhs_1d, rhs_2d,
)
from aoweno.physics import Euler, GasModel, InvalidStateError, advection, burgers, conserved
from aoweno.problems import dmr_states
from aoweno.stencil import SchemeParams

GAS = GasModel(1.4)
EULER1 = Euler(GAS, 1)
EULER2 = Euler(GAS, 2)
AO53 = SchemeParams.for_variant("ao53")
SCHEMES = ["js", "z", "zq", "ao53", "aon53", "ao543"]


def smooth_euler_1d(x):
    rho = 1.0 + 0.2 * np.sin(2 * np.pi * x)
    return conserved(rho, (0.5 + 0.1 * np.cos(2 * np.pi * x),), 1.0 + 0.1 * np.sin(4 * np.pi * x), GAS)


# {{{ grid and boundaries


def test_grid_geometry():
    g = Grid.uniform(0.0, 1.0, 4)
    np.testing.assert_allclose(g.centers(), [0.125, 0.375, 0.625, 0.875])
    np.testing.assert_allclose(g.faces(), np.linspace(0, 1, 5))
    assert g.centers(ghosts=True).size == 4 + 2 * g.ghost


def test_nodal_grid_has_end_points():
    x = Grid.nodal(-1.0, 1.0, 8).centers()
    assert x.size == 9
    assert x[0] == pytest.approx(-1.0) and x[-1] == pytest.approx(1.0)


@pytest.mark.parametrize("kw", [
    dict(bounds=((1.0, 0.0),), n=(4,)),
    dict(bounds=((0.0, 1.0),), n=(0,)),
    dict(bounds=((0.0, 1.0),), n=(4, 4)),
    dict(bounds=((0.0, 1.0),), n=(4,), ghost=2),
])
def test_invalid_grid(kw):
    with pytest.raises(ConfigurationError):
        Grid(**kw)


def test_invalid_boundaries():
    with pytest.raises(ConfigurationError, match="unknown boundary kind"):
        Boundary("open")
    with pytest.raises(ConfigurationError, match="needs data"):
        Boundary("dirichlet")
    with pytest.raises(ConfigurationError, match="periodic"):
        BoundarySpec({"xlo": Boundary("periodic"), "xhi": Boundary("transmissive")})


def test_periodic_ghosts():
    g = Grid.uniform(0, 1, 8)
    p = apply_boundaries(pad(np.arange(8.0)[None], g), g, BoundarySpec.all("periodic"))
    np.testing.assert_array_equal(p[0], [5, 6, 7, 0, 1, 2, 3, 4, 5, 6, 7, 0, 1, 2])


def test_transmissive_ghosts():
    g = Grid.uniform(0, 1, 4)
    p = apply_boundaries(pad(np.arange(1.0, 5.0)[None], g), g, BoundarySpec.all("transmissive"))
    np.testing.assert_array_equal(p[0], [1, 1, 1, 1, 2, 3, 4, 4, 4, 4])


def test_reflective_ghosts_flip_normal_momentum():
    g = Grid.uniform(0, 1, 4)
    u = conserved(np.ones(4), (np.full(4, 0.3),), np.ones(4), GAS)
    p = apply_boundaries(pad(u, g), g, BoundarySpec.all("reflective"))
    np.testing.assert_allclose(p[1, :3], -0.3)
    np.testing.assert_allclose(p[1, -3:], -0.3)
    np.testing.assert_allclose(p[[0, 2], :3], p[[0, 2], 3:6][:, ::-1])


def test_reflective_2d_flips_only_normal_component():
    g = Grid(((0.0, 1.0), (0.0, 1.0)), (4, 5))
    u = conserved(np.ones((4, 5)), (np.full((4, 5), 0.3), np.full((4, 5), -0.2)), np.ones((4, 5)), GAS)
    p = apply_boundaries(pad(u, g), g, BoundarySpec.all("reflective", 2))
    assert p[1, 0, 4] == pytest.approx(-0.3) and p[2, 0, 4] == pytest.approx(-0.2)
    assert p[1, 4, 0] == pytest.approx(0.3) and p[2, 4, 0] == pytest.approx(0.2)


def test_dirichlet_ghosts():
    g = Grid.uniform(0, 1, 4)
    spec = BoundarySpec({"xlo": Boundary("dirichlet", [2.0]), "xhi": Boundary("dirichlet", lambda c, t: c[0] + t)})
    p = apply_boundaries(pad(np.zeros((1, 4)), g), g, spec, t=1.0)
    np.testing.assert_allclose(p[0, :3], 2.0)
    np.testing.assert_allclose(p[0, -3:], g.centers(ghosts=True)[-3:] + 1.0)


def test_dmr_post_shock_state():
    post, pre = dmr_states(1.4)
    c, s = np.cos(np.pi / 6), np.sin(np.pi / 6)
    np.testing.assert_allclose(post, [8.0, 8 * 8.25 * c, -8 * 8.25 * s, 116.5 / 0.4 + 0.5 * 8 * 8.25**2])
    np.testing.assert_allclose(pre, [1.4, 0.0, 0.0, 2.5])


def test_dmr_boundaries():
    post, pre = dmr_states(1.4)
    x0 = 1.0 / 6.0
    states = DMRStates(post, pre, x0)
    g = Grid(((0.0, 4.0), (0.0, 1.0)), (16, 4))
    spec = BoundarySpec({
        "xlo": Boundary("transmissive"), "xhi": Boundary("transmissive"),
        "ylo": Boundary("dmr_bottom", states), "yhi": Boundary("dmr_top", states),
    })
    u = np.broadcast_to(pre[:, None, None], (4, 16, 4)).copy()
    t = 0.1
    p = apply_boundaries(pad(u, g), g, spec, t)
    x = g.centers(0, ghosts=True)
    top = p[:, :, -1]
    shock = x0 + (1 + 20 * t) / np.sqrt(3)
    np.testing.assert_allclose(top[:, x < shock], np.broadcast_to(post[:, None], top[:, x < shock].shape))
    np.testing.assert_allclose(top[:, x > shock], np.broadcast_to(pre[:, None], top[:, x > shock].shape))
    bottom = p[:, :, 0]
    inflow = x < x0
    np.testing.assert_allclose(bottom[:, inflow], np.broadcast_to(post[:, None], bottom[:, inflow].shape))
    # reflected pre-shock gas at rest is unchanged
    np.testing.assert_allclose(bottom[:, 3:-3][:, ~inflow[3:-3]], pre[:, None] * np.ones((1, int((~inflow[3:-3]).sum()))))


def test_missing_side():
    g = Grid(((0.0, 1.0), (0.0, 1.0)), (4, 4))
    with pytest.raises(ConfigurationError, match="ylo"):
        apply_boundaries(pad(np.zeros((4, 4, 4)), g), g, BoundarySpec.all("periodic", 1))


# }}}


# {{{ right-hand side


@pytest.mark.parametrize("scheme", SCHEMES)
def test_constant_state_has_zero_tendency(scheme):
    params = SchemeParams.for_variant(scheme)
    g = Grid.uniform(0, 1, 20)
    assert np.abs(rhs_1d(np.full(20, 0.7), burgers(), params, g, BoundarySpec.all("periodic"))).max() < 1e-13
    u = conserved(np.full(20, 1.3), (np.full(20, 0.4),), np.full(20, 2.0), GAS)
    assert np.abs(rhs_1d(u, EULER1, params, g, BoundarySpec.all("transmissive"))).max() < 1e-12
    g2 = Grid(((0.0, 1.0), (0.0, 1.0)), (8, 6))
    u2 = conserved(np.full((8, 6), 1.3), (np.full((8, 6), 0.4), np.full((8, 6), -0.2)), np.full((8, 6), 2.0), GAS)
    assert np.abs(rhs_2d(u2, EULER2, params, g2, BoundarySpec.all("periodic", 2))).max() < 1e-12


@pytest.mark.parametrize("scheme", ["js", "ao53", "ao543"])
def test_advection_tendency_order(scheme):
    params = SchemeParams.for_variant(scheme)
    errs = []
    ns = [20, 40, 80]
    for n in ns:
        g = Grid.uniform(0, 1, n)
        x = g.centers()
        d = rhs_1d(np.sin(2 * np.pi * x), advection(), params, g, BoundarySpec.all("periodic"))
        errs.append(np.abs(d + 2 * np.pi * np.cos(2 * np.pi * x)).max())
    orders = np.log2(np.array(errs[:-1]) / errs[1:])
    assert orders[-1] > 4.5


@settings(max_examples=25)
@given(st.sampled_from(SCHEMES), st.integers(0, 2**31))
def test_periodic_scheme_conserves(scheme, seed):
    """Interior fluxes telescope: the tendency sums to zero."""
    params = SchemeParams.for_variant(scheme)
    g = Grid.uniform(0, 1, 32)
    rng = np.random.default_rng(seed)
    d = rhs_1d(rng.uniform(-1, 1, 32), burgers(), params, g, BoundarySpec.all("periodic"))
    assert abs(d.sum()) * g.dx[0] < 1e-12
    rho = rng.uniform(0.5, 2.0, 32)
    u = conserved(rho, (rng.uniform(-1, 1, 32),), rng.uniform(0.5, 2.0, 32), GAS)
    d = rhs_1d(u, EULER1, params, g, BoundarySpec.all("periodic"))
    np.testing.assert_allclose(d.sum(axis=1) * g.dx[0], 0.0, atol=1e-11)


def test_tendency_telescopes_to_boundary_fluxes():
    g = Grid.uniform(0, 1, 24)
    u = smooth_euler_1d(g.centers())
    spec = BoundarySpec.all("transmissive")
    f = interface_fluxes_1d(u, EULER1, AO53, g, spec)
    d = rhs_1d(u, EULER1, AO53, g, spec)
    np.testing.assert_allclose(d.sum(axis=1) * g.dx[0], f[:, 0] - f[:, -1], atol=1e-12)


def test_fluxes_have_one_more_entry_than_cells():
    g = Grid.uniform(0, 1, 10)
    f = interface_fluxes_1d(smooth_euler_1d(g.centers()), EULER1, AO53, g, BoundarySpec.all("periodic"))
    assert f.shape == (3, 11)
    np.testing.assert_allclose(f[:, 0], f[:, -1], rtol=1e-13)


@pytest.mark.parametrize("characteristic", [True, False])
def test_aligned_2d_matches_1d(characteristic):
    n, m = 24, 6
    g1 = Grid.uniform(0, 1, n)
    u1 = smooth_euler_1d(g1.centers())
    d1 = rhs_1d(u1, EULER1, AO53, g1, BoundarySpec.all("periodic"), characteristic=characteristic)

    g2 = Grid(((0.0, 1.0), (0.0, 0.5)), (n, m))
    u2 = np.zeros((4, n, m))
    u2[[0, 1, 3]] = u1[:, :, None]
    d2 = rhs_2d(u2, EULER2, AO53, g2, BoundarySpec.all("periodic", 2), characteristic=characteristic)
    np.testing.assert_allclose(d2[[0, 1, 3]], np.broadcast_to(d1[:, :, None], (3, n, m)), atol=1e-13)
    np.testing.assert_allclose(d2[2], 0.0, atol=1e-13)


def test_xy_symmetry():
    n, m = 16, 12
    gxy = Grid(((0.0, 1.0), (0.0, 2.0)), (n, m))
    gyx = Grid(((0.0, 2.0), (0.0, 1.0)), (m, n))
    x, y = gxy.mesh()
    rho = 1 + 0.3 * np.sin(2 * np.pi * x) * np.cos(np.pi * y)
    u = conserved(rho, (0.2 + 0.1 * np.sin(np.pi * y), -0.1 + 0.2 * np.cos(2 * np.pi * x)), 1.0 + 0.1 * rho, GAS)
    swap = lambda a: a[[0, 2, 1, 3]].transpose(0, 2, 1)
    d = rhs_2d(u, EULER2, AO53, gxy, BoundarySpec.all("periodic", 2))
    e = rhs_2d(np.ascontiguousarray(swap(u)), EULER2, AO53, gyx, BoundarySpec.all("periodic", 2))
    np.testing.assert_allclose(swap(d), e, atol=1e-12)


@pytest.mark.parametrize("shift", [1, 5])
def test_translation_equivariance(shift):
    g = Grid.uniform(0, 1, 30)
    u = smooth_euler_1d(g.centers())
    u[0, 10:14] += 0.5  # a bump makes the weights nonlinear
    d = rhs_1d(u, EULER1, AO53, g, BoundarySpec.all("periodic"))
    ds = rhs_1d(np.roll(u, shift, axis=1), EULER1, AO53, g, BoundarySpec.all("periodic"))
    np.testing.assert_allclose(ds, np.roll(d, shift, axis=1), rtol=0, atol=1e-12)


def test_mirror_symmetry_of_scalar_burgers():
    g = Grid.uniform(-1, 1, 40)
    x = g.centers()
    u = np.exp(-10 * x * x) + (x > 0.3)
    d = rhs_1d(u, burgers(), AO53, g, BoundarySpec.all("transmissive"))
    # u(x) -> -u(-x) is a symmetry of Burgers' equation
    dm = rhs_1d(-u[::-1], burgers(), AO53, g, BoundarySpec.all("transmissive"))
    np.testing.assert_allclose(dm, -d[::-1], atol=1e-12)


def test_gravity_source():
    g = Grid(((0.0, 1.0), (0.0, 1.0)), (6, 6))
    u = conserved(np.full((6, 6), 2.0), (np.zeros((6, 6)), np.full((6, 6), 0.5)), np.ones((6, 6)), GAS)
    d = rhs_2d(u, EULER2, AO53, g, BoundarySpec.all("periodic", 2), source=True)
    np.testing.assert_allclose(d[2], 2.0, atol=1e-12)
    np.testing.assert_allclose(d[3], 1.0, atol=1e-12)


def test_make_rhs_dispatch():
    g = Grid.uniform(0, 1, 10)
    f = make_rhs(advection(), AO53, g, BoundarySpec.all("periodic"))
    assert f(np.ones(10), 0.0).shape == (10,)


def test_failure_reports_interior_index():
    g = Grid.uniform(0, 1, 16)
    u = conserved(np.ones(16), (np.zeros(16),), np.ones(16), GAS)
    u[2, 7] = -1.0
    with pytest.raises(InvalidStateError) as err:
        rhs_1d(u, EULER1, AO53, g, BoundarySpec.all("periodic"))
    assert err.value.index == (7,)

    g2 = Grid(((0.0, 1.0), (0.0, 1.0)), (8, 10))
    u2 = conserved(np.ones((8, 10)), (np.zeros((8, 10)), np.zeros((8, 10))), np.ones((8, 10)), GAS)
    u2[3, 3, 5] = -1.0
    with pytest.raises(InvalidStateError) as err:
        rhs_2d(u2, EULER2, AO53, g2, BoundarySpec.all("periodic", 2))
    assert err.value.index == (3, 5)


# }}}
