import numpy as np
import pytest
from hypothesis import given, strategies as st

from aoweno import problems
from aoweno.harness import dt_function
from aoweno.mesh import make_rhs
from aoweno.stencil import SchemeParams
from aoweno.timestep import NumericalFailure, TimeControl, advance, ssp_rk3_step


def decay(u, t):
    return -u


def test_zero_rhs_is_identity():
    u = np.array([1.0, -2.0, 3.5])
    np.testing.assert_array_equal(ssp_rk3_step(u, 0.3, lambda v, t: np.zeros_like(v)), u)


def test_linear_decay_matches_taylor_polynomial():
    dt = 0.1
    u1 = ssp_rk3_step(np.array([1.0]), dt, decay)[0]
    assert u1 == pytest.approx(1 - dt + dt**2 / 2 - dt**3 / 6, abs=1e-15)
    assert u1 == pytest.approx(0.9048333333, abs=1e-10)


def test_temporal_order():
    errs = []
    for n in (10, 20, 40, 80):
        res = advance(np.array([1.0]), decay, 1.0, lambda u, s, n=n: 1.0 / n)
        errs.append(abs(res.u[0] - np.exp(-1.0)))
    orders = np.log2(np.array(errs[:-1]) / errs[1:])
    np.testing.assert_allclose(orders, 3.0, atol=0.1)


def test_stage_times():
    seen = []

    def rhs(u, t):
        seen.append(t)
        return np.zeros_like(u)

    ssp_rk3_step(np.zeros(1), 0.4, rhs, t=1.0)
    assert seen == pytest.approx([1.0, 1.4, 1.2])


@given(st.floats(0.01, 3.0), st.floats(1e-3, 0.7))
def test_final_time_is_hit_exactly(t_final, dt):
    res = advance(np.zeros(2), lambda u, t: np.zeros_like(u), t_final, lambda u, s: dt)
    assert res.t == t_final
    np.testing.assert_array_equal(res.u, 0.0)
    assert abs(res.steps - np.ceil(t_final / dt)) <= 1


def test_max_steps_stops_early():
    res = advance(np.ones(1), decay, 1.0, lambda u, s: 0.1, max_steps=3)
    assert res.steps == 3 and res.t == pytest.approx(0.3)


def test_callback_sees_every_step():
    calls = []
    advance(np.ones(1), decay, 0.5, lambda u, s: 0.1, callback=lambda u, t, s: calls.append(s))
    assert calls == [1, 2, 3, 4, 5]


def test_nan_aborts_with_diagnostics():
    with pytest.raises(NumericalFailure, match="after step 1"):
        advance(np.ones(1), lambda u, t: u * np.nan, 1.0, lambda u, s: 0.1)
    with pytest.raises(NumericalFailure, match="nonpositive time step"):
        advance(np.ones(1), decay, 1.0, lambda u, s: 0.0)


# {{{ time control


def test_cfl_step_1d_and_2d():
    tc = TimeControl(1.0, cfl=0.5)
    assert tc.dt((0.1,), (2.0,)) == pytest.approx(0.025)
    # directional rates add in 2D
    assert tc.dt((0.1, 0.2), (1.0, 2.0)) == pytest.approx(0.5 / (10 + 10))


def test_power_law_step():
    tc = TimeControl(1.0, mode="power_law", coeff=0.5, power=1.5)
    assert tc.dt((0.01,)) == pytest.approx(0.5 * 0.01**1.5)
    scaled = TimeControl(1.0, mode="power_law", coeff=0.5, power=1.5, speed_scaled=True)
    assert scaled.dt((0.01,), (2.0,)) == pytest.approx(0.5 * 0.005**1.5)


def test_startup_ramp():
    tc = TimeControl(1.0, cfl=0.8, startup_steps=4)
    steps = [tc.dt((1.0,), (1.0,), k) for k in range(6)]
    np.testing.assert_allclose(steps, [0.2, 0.4, 0.6, 0.8, 0.8, 0.8])


@pytest.mark.parametrize("kw", [dict(mode="rk4"), dict(cfl=0.0), dict(cfl=1.5), dict(startup_steps=-1)])
def test_invalid_time_control(kw):
    with pytest.raises(ValueError):
        TimeControl(1.0, **kw)


def test_cfl_needs_speeds():
    with pytest.raises(ValueError, match="wave speeds"):
        TimeControl(1.0).dt((0.1,))


# }}}


def test_advection_period_returns_to_initial_data():
    # the domain is [-1, 1], so one period takes t = 2
    spec = problems.build("advection_smooth").with_(t_final=2.0, time=TimeControl(2.0, cfl=0.95))
    s = problems.setup(spec, 50)
    rhs = make_rhs(s.law, SchemeParams.for_variant("ao53"), s.grid, s.boundaries)
    res = advance(s.u0, rhs, 2.0, dt_function(spec, s.law, s.grid))
    err = np.abs(res.u - s.u0).max()
    dx = 2.0 / 50
    # dt = 0.95 dx: temporal and spatial errors are both small multiples of dx^3 and dx^5
    assert err < 10 * dx**3
    again = advance(s.u0, rhs, 2.0, dt_function(spec, s.law, s.grid))
    assert again.steps == res.steps
    np.testing.assert_array_equal(again.u, res.u)
