import dataclasses

import numpy as np
import pytest
from scipy.linalg import expm
from scipy.optimize import minimize_scalar

from lhbif import (
    SIGMA,
    BlowUpError,
    IntegratorConfig,
    OrbitNotFoundError,
    SystemParams,
    averaged_zeros,
    epsilon_sweep,
    find_periodic_orbit,
    guiding_center,
    integrate,
    jacobian,
    perturb,
    variational_flow,
    vector_field,
)


def nontrivial_zero(spec, label=None):
    zeros = [z for z in averaged_zeros(spec) if not z.trivial]
    if label is None:
        return [z for z in zeros if not z.axis_flag][0]
    return next(z for z in zeros if z.label == label)


# ---------------------------------------------------------------------------
# integrator and variational flow
# ---------------------------------------------------------------------------


def test_integrate_endpoint_matches_linear_solution():
    # with x = y = z = 0 the w equation decouples: w(t) = w0 exp(-b t)
    p = SystemParams(a=1.0, b=0.5, c=1.0, d=1.0, e=3.0)
    traj = integrate(p, [0.0, 0.0, 0.0, 2.0], 3.0)
    assert traj.endpoint[3] == pytest.approx(2.0 * np.exp(-1.5), rel=1e-8)
    assert np.allclose(traj.endpoint[:3], 0.0, atol=1e-12)


def test_integrate_blowup_raises():
    p = SystemParams(a=1.0, b=-2.0, c=1.0, d=1.0, e=3.0)
    with pytest.raises(BlowUpError):
        integrate(p, [0.0, 0.0, 0.0, 1.0], 10.0)


def test_integrator_config_validation():
    with pytest.raises(ValueError):
        IntegratorConfig(rtol=0.0)


def test_variational_flow_identity_at_zero_time(params_example):
    s0 = np.array([0.3, -0.2, 0.1, 0.5])
    endpoint, phi = variational_flow(params_example, s0, 0.0)
    assert np.allclose(endpoint, s0, atol=0.0)
    assert np.allclose(phi, np.eye(4), atol=0.0)


def test_variational_flow_is_matrix_exponential_at_equilibrium(params_example):
    # at an equilibrium the variational flow is exp(t J)
    t_end = 0.8
    endpoint, phi = variational_flow(params_example, np.zeros(4), t_end)
    assert np.allclose(endpoint, 0.0, atol=1e-12)
    assert np.allclose(phi, expm(t_end * jacobian(params_example, np.zeros(4))), atol=1e-8)


def test_variational_flow_matches_finite_differences(params_example):
    s0 = np.array([0.3, -0.2, 0.1, 0.5])
    t_end = 1.2
    _, phi = variational_flow(params_example, s0, t_end)
    h = 1e-6
    for j in range(4):
        dv = np.zeros(4)
        dv[j] = h
        fd = (
            integrate(params_example, s0 + dv, t_end).endpoint
            - integrate(params_example, s0 - dv, t_end).endpoint
        ) / (2 * h)
        assert np.allclose(phi[:, j], fd, atol=1e-6)


# ---------------------------------------------------------------------------
# shooting
# ---------------------------------------------------------------------------


def test_orbit_case_i(spec_i):
    eps = 1e-2
    seed = nontrivial_zero(spec_i)
    orb = find_periodic_orbit(spec_i, eps, seed)
    assert orb.closure_residual <= 1e-10
    assert orb.period == pytest.approx(2 * np.pi / spec_i.omega, rel=0.05)
    # the trivial Floquet multiplier sits on the unit circle
    trivial = orb.floquet_multipliers[orb.trivial_multiplier_index]
    assert abs(trivial - 1.0) <= 1e-6
    # closure verified by direct re-integration
    endpoint = integrate(perturb(spec_i, eps), orb.initial_state, orb.period).endpoint
    assert np.linalg.norm(endpoint - orb.initial_state) <= 1e-8
    # section point stays near the averaged zero at first order
    assert np.linalg.norm(orb.reduced_section_point - seed.location) <= 5 * eps


def test_orbit_case_iii_exists_and_is_unstable(spec_iii):
    orb = find_periodic_orbit(spec_iii, 1e-2, nontrivial_zero(spec_iii))
    assert orb.closure_residual <= 1e-10
    assert np.max(np.abs(orb.nontrivial_multipliers)) > 1.0


def test_orbit_sigma_symmetry(spec_iii):
    eps = 1e-2
    plus = find_periodic_orbit(spec_iii, eps, nontrivial_zero(spec_iii))
    spec_minus = dataclasses.replace(spec_iii, branch="minus")
    minus = find_periodic_orbit(spec_minus, eps, nontrivial_zero(spec_minus))
    assert minus.period == pytest.approx(plus.period, abs=1e-8)
    # sigma maps the plus orbit onto the minus orbit (up to phase): the image
    # of the plus section point lies on the minus trajectory
    target = SIGMA @ plus.initial_state
    params = perturb(spec_iii, eps)
    cfg = IntegratorConfig(dense_output=True)
    traj = integrate(params, minus.initial_state, minus.period, cfg)

    def distance(t):
        return np.linalg.norm(traj.dense(t) - target)

    ts = np.linspace(0.0, minus.period, 400)
    t_best = ts[np.argmin([distance(t) for t in ts])]
    window = minus.period / 400
    refined = minimize_scalar(
        distance, bounds=(max(0.0, t_best - window), min(minus.period, t_best + window)),
        method="bounded",
    )
    # each orbit is a fixed point of the numerically integrated flow, so the
    # match is limited by the integrator tolerance, not the closure residual
    exact = integrate(params, minus.initial_state, float(refined.x)).endpoint
    assert np.linalg.norm(exact - target) <= 2e-6


def test_trivial_seed_returns_equilibrium(spec_iii):
    orb = find_periodic_orbit(spec_iii, 1e-2, (0.0, 0.0, 0.0))
    assert orb.closure_residual == 0.0
    params = perturb(spec_iii, 1e-2)
    assert np.linalg.norm(vector_field(params, orb.initial_state)) <= 1e-12


def test_axis_seed_fails_honestly(spec_ii):
    seed = nontrivial_zero(spec_ii, label="s1")
    with pytest.raises(OrbitNotFoundError):
        find_periodic_orbit(spec_ii, 1e-2, seed)


def test_eps_range_validation(spec_i):
    seed = nontrivial_zero(spec_i)
    with pytest.raises(ValueError):
        find_periodic_orbit(spec_i, 0.0, seed)
    with pytest.raises(ValueError):
        find_periodic_orbit(spec_i, 0.2, seed)


def test_guiding_center_fixes_theta_averaged_drift(spec_iii):
    from lhbif.reduction import _reduced_rates, jordan_change

    eps = 1e-2
    seed = nontrivial_zero(spec_iii).location
    center = guiding_center(spec_iii, eps, seed)
    lin = jordan_change(spec_iii)
    theta = np.arange(512) * (2 * np.pi / 512)
    drift = _reduced_rates(spec_iii, lin, theta, center, eps).mean(axis=1)
    assert np.linalg.norm(drift) <= 1e-10


def test_guiding_center_leaves_axis_seed_alone(spec_iii):
    seed = np.array([0.0, 0.3, 0.1])
    assert np.allclose(guiding_center(spec_iii, 1e-2, seed), seed, atol=0.0)


# ---------------------------------------------------------------------------
# epsilon sweep
# ---------------------------------------------------------------------------


def test_epsilon_sweep_case_i(spec_i):
    rep = epsilon_sweep(spec_i, nontrivial_zero(spec_i), [1e-2, 5e-3, 2.5e-3])
    assert not rep.failures
    assert rep.fitted_order == pytest.approx(1.0, abs=0.2)
    for eps, perr in zip(rep.eps_grid, rep.period_errors):
        assert perr <= 5 * eps
    # averaged eigenvalues predict the Floquet exponent signs
    assert rep.stability_agreement and all(rep.stability_agreement)


def test_epsilon_sweep_validation(spec_i):
    seed = nontrivial_zero(spec_i)
    with pytest.raises(ValueError):
        epsilon_sweep(spec_i, seed, [1e-2, 5e-3])  # too short
    with pytest.raises(ValueError):
        epsilon_sweep(spec_i, seed, [1e-3, 5e-3, 1e-2])  # not decreasing
