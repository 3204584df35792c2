import dataclasses

import numpy as np
import pytest

from lhbif import (
    DegenerateParameterError,
    ExtractionError,
    SIGMA,
    UnfoldingSpec,
    first_order_field_closed,
    first_order_field_numeric,
    is_zero_hopf,
    jacobian,
    jordan_change,
    jordan_matrix,
    perturb,
    translation_point,
)

THETAS = np.linspace(0.0, 2 * np.pi, 9)
STATES = [(0.5, 0.3, -0.7), (1.0, -1.0, 1.0), (0.2, 0.0, 0.0)]


def all_specs(spec_i, spec_ii, spec_iii):
    return [spec_i, spec_ii, spec_iii]


def test_spec_validation():
    with pytest.raises(DegenerateParameterError, match="c must be nonzero"):
        UnfoldingSpec(case="i", c=0.0, omega=1.0)
    with pytest.raises(DegenerateParameterError):
        UnfoldingSpec(case="i", c=1.0)  # omega missing
    with pytest.raises(DegenerateParameterError):
        UnfoldingSpec(case="ii", c=1.0)  # d missing
    with pytest.raises(DegenerateParameterError):
        UnfoldingSpec(case="ii", c=2.0, d=1.0)  # 3 d^2 - c^2 <= 0
    with pytest.raises(DegenerateParameterError):
        UnfoldingSpec(case="ii", c=1.0, d=1.0, omega=5.0)  # inconsistent omega
    with pytest.raises(DegenerateParameterError):
        UnfoldingSpec(case="iii", c=1.0, omega=1.0, branch="north")
    with pytest.raises(DegenerateParameterError):
        UnfoldingSpec(case="iv", c=1.0, omega=1.0)


def test_case_ii_omega_computed_from_d(spec_ii):
    assert spec_ii.omega == pytest.approx(np.sqrt(3 * spec_ii.d**2 - spec_ii.c**2))


def test_perturb_at_zero_is_zero_hopf(spec_i, spec_ii, spec_iii):
    for spec in all_specs(spec_i, spec_ii, spec_iii):
        p0 = perturb(spec, 0.0)
        at = translation_point(spec, p0)
        cert = is_zero_hopf(p0, at)
        assert cert is not None, spec.case
        assert cert.omega == pytest.approx(spec.omega, abs=1e-8)


def test_perturb_rejects_negative_eps(spec_i):
    with pytest.raises(DegenerateParameterError):
        perturb(spec_i, -1e-3)


def test_jordan_conjugation_is_exact(spec_i, spec_ii, spec_iii):
    for spec in all_specs(spec_i, spec_ii, spec_iii):
        p0 = perturb(spec, 0.0)
        at = translation_point(spec, p0)
        lin = jordan_change(spec)
        conj = lin.inverse @ jacobian(p0, at) @ lin.forward
        w = spec.omega
        expected = np.zeros((4, 4))
        expected[0, 1], expected[1, 0] = -w, w
        assert np.allclose(conj, expected, atol=1e-10), spec.case


def test_jordan_matrix_is_invertible(spec_i, spec_ii, spec_iii):
    for spec in all_specs(spec_i, spec_ii, spec_iii):
        m = jordan_matrix(spec)
        assert abs(np.linalg.det(m)) > 1e-8


def test_translation_point_branches(spec_iii):
    p = perturb(spec_iii, 1e-2)
    plus = translation_point(spec_iii, p)
    minus_spec = dataclasses.replace(spec_iii, branch="minus")
    minus = translation_point(minus_spec, p)
    assert np.allclose(minus, SIGMA @ plus, atol=0.0)


def test_closed_field_is_periodic(spec_i, spec_ii, spec_iii):
    for spec in all_specs(spec_i, spec_ii, spec_iii):
        f = first_order_field_closed(spec)
        for state in STATES:
            assert np.allclose(
                f(THETAS, state), f(THETAS + 2 * np.pi, state), atol=1e-12
            )


def test_closed_vs_numeric_field_pointwise(spec_i, spec_ii, spec_iii):
    for spec in all_specs(spec_i, spec_ii, spec_iii):
        closed = first_order_field_closed(spec)
        numeric = first_order_field_numeric(spec)
        for state in [(0.5, 0.3, -0.7), (1.0, -1.0, 1.0)]:
            diff = np.abs(closed(THETAS, state) - numeric(THETAS, state))
            assert np.max(diff) <= 1e-6, (spec.case, state)


def test_closed_field_axis_behavior(spec_ii, spec_iii):
    # the cylindrical reduction carries a genuine 1/r singularity on the axis
    # for generic (z, w); at the origin state the r-free terms cancel and the
    # limit exists
    from lhbif import AxisSingularError

    for spec in (spec_ii, spec_iii):
        f = first_order_field_closed(spec)
        with pytest.raises(AxisSingularError):
            f(THETAS, (0.0, 0.4, -0.2))
        at_origin = f(THETAS, (0.0, 0.0, 0.0))
        assert np.all(np.isfinite(at_origin))
        near = f(THETAS, (1e-7, 0.0, 0.0))
        assert np.max(np.abs(at_origin - near)) <= 1e-5


def test_numeric_field_rejects_axis(spec_i):
    numeric = first_order_field_numeric(spec_i)
    from lhbif import ReparametrizationError

    with pytest.raises(ReparametrizationError):
        numeric(0.0, (0.0, 0.1, 0.1))


def test_numeric_field_branch_independent(spec_iii):
    # the first-order field is shared by the two symmetric branches
    plus = first_order_field_numeric(spec_iii)
    minus = first_order_field_numeric(dataclasses.replace(spec_iii, branch="minus"))
    for state in [(0.5, 0.3, -0.7), (0.8, -0.2, 0.4)]:
        assert np.max(np.abs(plus(THETAS, state) - minus(THETAS, state))) <= 1e-6


def test_extraction_residual_guard(spec_i):
    strict = first_order_field_numeric(spec_i, tol=1e-30)
    with pytest.raises(ExtractionError):
        strict(0.0, (0.5, 0.3, -0.7))


def test_scalar_and_vector_theta_shapes(spec_i):
    f = first_order_field_closed(spec_i)
    single = f(0.7, (0.5, 0.3, -0.7))
    assert single.shape == (3,)
    many = f(THETAS, (0.5, 0.3, -0.7))
    assert many.shape == (3, len(THETAS))
    assert np.allclose(many[:, 0], f(THETAS[0], (0.5, 0.3, -0.7)))
