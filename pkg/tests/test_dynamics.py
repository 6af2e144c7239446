import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from artloop.dynamics import NonFiniteState, StepMethod, VectorField, integrate, step
from oracles import newton_cooling

DECAY = VectorField(1, lambda x, u, t: (-0.1 * (x[0] - 10.0),))
EULER, RK4 = StepMethod.EULER, StepMethod.RK4


def decay_error(method, dt, horizon=1.0):
    n = round(horizon / dt)
    traj = integrate(DECAY, method, (20.0,), [()] * n, dt, n)
    return abs(traj[-1, 0] - newton_cooling(20.0, 10.0, 0.1, 1.0, 0.0, 0.0, horizon))


def test_zero_field_leaves_state():
    zero = VectorField(2, lambda x, u, t: (0.0, 0.0))
    assert step(zero, RK4, (1.5, -2.0), (), 0.0, 1.0) == (1.5, -2.0)


def test_one_euler_step():
    assert step(DECAY, EULER, (20.0,), (), 0.0, 1.0) == (19.0,)


def test_one_rk4_step_against_exponential():
    (x,) = step(DECAY, RK4, (20.0,), (), 0.0, 1.0)
    assert x == pytest.approx(newton_cooling(20.0, 10.0, 0.1, 1.0, 0.0, 0.0, 1.0), abs=1e-6)
    assert x == pytest.approx(19.0484, abs=1e-3)


def test_integrate_examples():
    assert integrate(DECAY, EULER, (3.0,), [], 0.1, 0).tolist() == [[3.0]]
    ramp = VectorField(1, lambda x, u, t: (1.0,))
    assert integrate(ramp, EULER, (0.0,), [()] * 4, 0.5, 4)[:, 0].tolist() == [0.0, 0.5, 1.0, 1.5, 2.0]


def test_euler_error_is_first_order():
    e1, e2 = decay_error(EULER, 0.1), decay_error(EULER, 0.05)
    C = e1 / 0.1
    assert e2 <= 1.2 * C * 0.05


def test_inputs_are_held_per_step():
    drive = VectorField(1, lambda x, u, t: (u[0],))
    traj = integrate(drive, RK4, (0.0,), [(1.0,), (-2.0,), (0.5,)], 0.5, 3)
    assert traj[:, 0].tolist() == [0.0, 0.5, -0.5, -0.25]


@pytest.mark.parametrize("method,target,tol", [(EULER, 2.0, 0.2), (RK4, 16.0, None)])
def test_convergence_order(method, target, tol):
    errs = [decay_error(method, dt) for dt in (0.1, 0.05, 0.025)]
    for a, b in zip(errs, errs[1:]):
        ratio = a / b
        if tol is None:
            assert target / 2 <= ratio <= target * 2
        else:
            assert abs(ratio - target) <= tol * target


def test_determinism():
    f = VectorField(2, lambda x, u, t: (x[1], -math.sin(x[0]) - 0.1 * x[1] + u[0]))
    inputs = [(math.sin(i),) for i in range(200)]
    a = integrate(f, RK4, (1.0, 0.0), inputs, 0.01, 200)
    b = integrate(f, RK4, (1.0, 0.0), inputs, 0.01, 200)
    assert np.array_equal(a, b)


@given(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3), st.floats(-10, 10), st.sampled_from([EULER, RK4]))
def test_linear_field_commutes_with_scaling(x0, x1, s, method):
    f = VectorField(2, lambda x, u, t: (-0.3 * x[0] + 2.0 * x[1], -x[0] - 0.5 * x[1]))
    scaled = step(f, method, (s * x0, s * x1), (), 0.0, 0.1)
    ref = step(f, method, (x0, x1), (), 0.0, 0.1)
    for a, b in zip(scaled, ref):
        assert a == pytest.approx(s * b, rel=1e-12, abs=1e-9)


def test_errors():
    with pytest.raises(ValueError):
        step(DECAY, EULER, (1.0,), (), 0.0, 0.0)
    with pytest.raises(ValueError):
        step(VectorField(2, lambda x, u, t: (1.0,)), RK4, (0.0, 0.0), (), 0.0, 0.1)
    with pytest.raises(NonFiniteState):
        step(VectorField(1, lambda x, u, t: (math.inf,)), EULER, (0.0,), (), 0.0, 0.1)
    with pytest.raises(NonFiniteState):
        step(DECAY, RK4, (math.nan,), (), 0.0, 0.1)
    with pytest.raises(ValueError):
        integrate(DECAY, EULER, (0.0,), [()], 0.1, 2)
