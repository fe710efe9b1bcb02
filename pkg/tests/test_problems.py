import math

import numpy as np
import pytest

from hbvm.problems import (
    BUILTIN_NAMES,
    builtin,
    finite_difference_gradient,
    kepler_exact,
    kepler_initial_state,
    solve_kepler_equation,
    vector_field,
)


def test_vector_field_examples():
    np.testing.assert_array_equal(vector_field(builtin("harmonic"), [1.0, 0.0]), [0.0, -1.0])
    np.testing.assert_array_equal(vector_field(builtin("quartic_oscillator"), [1.0, 1.0]), [1.0, -1.0])
    np.testing.assert_array_equal(vector_field(builtin("pendulum"), [0.0, 1.0]), [1.0, 0.0])


def test_vector_field_dimension_check():
    with pytest.raises(ValueError):
        vector_field(builtin("henon_heiles"), [0.0, 1.0])


def test_vector_field_is_batched():
    sys = builtin("henon_heiles")
    Y = np.random.default_rng(0).uniform(-1, 1, (5, 4))
    F = vector_field(sys, Y)
    for y, f in zip(Y, F):
        np.testing.assert_array_equal(vector_field(sys, y), f)


def test_degrees():
    assert builtin("harmonic").poly_degree == 2
    assert builtin("quartic_oscillator").poly_degree == 4
    assert builtin("sextic_oscillator").poly_degree == 6
    assert builtin("henon_heiles").poly_degree == 3
    assert builtin("pendulum").poly_degree is None
    assert builtin("kepler").poly_degree is None
    assert builtin("henon_heiles").m == 2


def test_henon_heiles_formula():
    sys = builtin("henon_heiles")
    q1, q2, p1, p2 = 0.3, -0.2, 0.1, 0.4
    H = (p1**2 + p2**2) / 2 + (q1**2 + q2**2) / 2 + q1**2 * q2 - q2**3 / 3
    assert sys.energy([q1, q2, p1, p2]) == pytest.approx(H, abs=1e-16)


def test_unknown_name():
    with pytest.raises(ValueError):
        builtin("duffing")


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_gradient_matches_finite_differences(name):
    sys = builtin(name)
    rng = np.random.default_rng(hash(name) % 2**32)
    count = 0
    while count < 50:
        y = rng.uniform(-2, 2, sys.dim)
        if name == "kepler" and np.hypot(y[0], y[1]) < 0.5:
            continue
        g = sys.gradient(y)
        fd = finite_difference_gradient(sys, y)
        assert np.max(np.abs(fd - g)) <= 1e-6 * max(1.0, np.max(np.abs(g)))
        count += 1


def test_harmonic_exact_conserves_energy():
    sys = builtin("harmonic")
    y0 = np.array([0.3, -1.2])
    for t in np.linspace(0, 20, 41):
        assert abs(sys.energy(sys.exact_solution(t, y0)) - sys.energy(y0)) <= 1e-12


def test_kepler_equation():
    for e in (0.0, 0.3, 0.9):
        for M in (0.1, 2.0, 5.0, -1.0):
            E = solve_kepler_equation(M, e)
            assert E - e * math.sin(E) == pytest.approx(M, abs=1e-13)


def test_kepler_exact_is_periodic_and_conservative():
    sys = builtin("kepler")
    y0 = kepler_initial_state(0.3)
    np.testing.assert_allclose(kepler_exact(0.0, y0), y0, atol=1e-14)
    np.testing.assert_allclose(kepler_exact(2 * math.pi, y0), y0, atol=1e-12)
    for t in (0.7, 3.1, 5.5):
        assert sys.energy(kepler_exact(t, y0)) == pytest.approx(-0.5, abs=1e-13)


def test_kepler_exact_solves_the_ode():
    # finite-difference time derivative of the flow equals the vector field
    sys = builtin("kepler")
    y0 = np.array([0.4, 0.9, -0.8, 0.3])  # generic orientation, bound orbit
    for t in (0.2, 1.3, 4.0):
        d = 1e-5
        fd = (kepler_exact(t + d, y0) - kepler_exact(t - d, y0)) / (2 * d)
        np.testing.assert_allclose(fd, vector_field(sys, kepler_exact(t, y0)), atol=1e-7)


def test_kepler_exact_clockwise_orbit():
    sys = builtin("kepler")
    y0 = np.array([1.0, 0.0, 0.0, -1.1])
    d = 1e-5
    fd = (kepler_exact(0.5 + d, y0) - kepler_exact(0.5 - d, y0)) / (2 * d)
    np.testing.assert_allclose(fd, vector_field(sys, kepler_exact(0.5, y0)), atol=1e-7)
