import numpy as np
import pytest

from lhbif import (
    NonHyperbolicError,
    UnfoldingSpec,
    average_quadrature,
    averaged_map_closed,
    averaged_zeros,
    first_order_field_closed,
    stability_analysis,
)

STATES = [(0.5, 0.3, -0.7), (1.0, -1.0, 1.0), (0.25, 0.8, -0.4)]


def by_label(zeros):
    return {z.label: z for z in zeros}


def test_quadrature_of_closed_field_matches_closed_average(
    spec_i, spec_ii, spec_iii
):
    for spec in (spec_i, spec_ii, spec_iii):
        field = first_order_field_closed(spec)
        amap = averaged_map_closed(spec)
        for state in STATES:
            got = average_quadrature(field, state)
            assert np.allclose(got, amap(state), atol=1e-10), spec.case


def test_quadrature_panel_validation(spec_i):
    field = first_order_field_closed(spec_i)
    with pytest.raises(ValueError):
        average_quadrature(field, (0.5, 0.0, 0.0), n=4)


def test_averaged_jacobian_matches_finite_differences(spec_i, spec_ii, spec_iii):
    h = 1e-6
    for spec in (spec_i, spec_ii, spec_iii):
        amap = averaged_map_closed(spec)
        state = np.array([0.6, -0.3, 0.4])
        jac = amap.jacobian(state)
        for j in range(3):
            dv = np.zeros(3)
            dv[j] = h
            fd = (amap(state + dv) - amap(state - dv)) / (2 * h)
            assert np.allclose(jac[:, j], fd, atol=1e-6), spec.case


def test_case_i_zeros(spec_i):
    zeros = by_label(averaged_zeros(spec_i))
    assert set(zeros) == {"s0", "s1", "s2", "s3,4"}
    assert zeros["s0"].trivial
    assert np.allclose(zeros["s1"].location, [0.0, -0.5, 1.0], atol=1e-10)
    assert np.allclose(zeros["s2"].location, [0.0, 0.5, 1.0], atol=1e-10)
    s34 = zeros["s3,4"]
    assert np.allclose(s34.location, [np.sqrt(3) / 2, 0.0, 0.5], atol=1e-10)
    assert s34.jac_det == pytest.approx(-1.0, abs=1e-10)
    assert s34.multiplicity == 2
    for z in zeros.values():
        assert z.residual <= 1e-10


def test_case_ii_zeros_example(spec_ii):
    zeros = by_label(averaged_zeros(spec_ii))
    # with (c, d, e) = (1, 2, 6) only the line zero and the axial pair are real
    assert set(zeros) == {"s1", "s4", "s5"}
    assert "s0" not in zeros  # the origin is not a zero for the axis-point case
    amap = averaged_map_closed(spec_ii)
    for z in zeros.values():
        assert z.residual <= 1e-10
        assert np.max(np.abs(amap(z.location))) <= 1e-10


def test_case_ii_all_five_zeros(spec_ii_five):
    zeros = averaged_zeros(spec_ii_five)
    assert sum(z.multiplicity for z in zeros) == 5
    assert {z.label for z in zeros} == {"s1", "s2,3", "s4", "s5"}
    for z in zeros:
        assert z.residual <= 1e-10


def test_case_iii_zero_and_spectrum(spec_iii):
    zeros = by_label(averaged_zeros(spec_iii))
    assert set(zeros) == {"s0", "s1,2"}
    s12 = zeros["s1,2"]
    assert np.allclose(s12.location, [np.sqrt(0.375), 0.0, -0.5], atol=1e-10)
    assert s12.jac_det == pytest.approx(-1.0, abs=1e-10)
    expected = np.array([-1.0, 0.5 - 0.8660254j, 0.5 + 0.8660254j])
    got = np.sort_complex(s12.eigenvalues)
    assert np.allclose(np.sort_complex(expected), got, atol=1e-7)
    assert s12.verdict == "unstable"
    assert s12.multiplicity == 2


def test_char_cubic_matches_eigenvalues(spec_iii):
    for z in averaged_zeros(spec_iii):
        roots = np.roots(z.char_cubic)
        assert np.allclose(
            np.sort_complex(roots), np.sort_complex(z.eigenvalues), atol=1e-8
        )


def test_stability_report_discriminants(spec_ii):
    report = stability_analysis(spec_ii)
    assert report.case == "ii"
    c, d, e = spec_ii.c, spec_ii.d, spec_ii.e
    assert report.discriminants["q_radial"] == pytest.approx(
        c**4 - 8 * c**2 * d**2 + 7 * d**4 + 2 * c * d**2 * e
    )
    assert report.discriminants["q_axial"] == pytest.approx(
        (c**4 - 4 * c**2 * d**2 + 3 * d**4) * (c**2 + d**2 - c * e)
    )


def test_nonhyperbolic_configuration_raises():
    spec = UnfoldingSpec(case="i", c=1.0, omega=1.0, a1=1.0, b1=0.0, e1=1.0)
    with pytest.raises(NonHyperbolicError):
        stability_analysis(spec)
