import numpy as np
import pytest

from lhbif import (
    DegenerateParameterError,
    SystemParams,
    char_poly,
    is_zero_hopf,
    jacobian,
    origin_quartic,
    spectrum_distance,
    zero_hopf_params,
)


def random_params(rng, n):
    for _ in range(n):
        a, b, d, e = rng.uniform(-3, 3, size=4)
        c = rng.uniform(0.2, 3.0) * rng.choice([-1.0, 1.0])
        yield SystemParams(a=a, b=b, c=c, d=d, e=e)


def test_char_poly_matches_eigensolver(rng):
    for p in random_params(rng, 30):
        at = rng.uniform(-2, 2, size=4)
        got = char_poly(p, at).as_array()
        expected = np.poly(jacobian(p, at))
        assert np.allclose(got, expected, rtol=1e-10, atol=1e-10)


def test_origin_quartic_matches_char_poly(rng):
    for p in random_params(rng, 30):
        got = origin_quartic(p).as_array()
        expected = char_poly(p, np.zeros(4)).as_array()
        assert np.allclose(got, expected, rtol=1e-12, atol=1e-12)


def test_c_coefficient_sign_variant_is_wrong(rng):
    # regression for the printed -(b - c)e variant of the lambda^1 coefficient
    mismatched = 0
    for p in random_params(rng, 30):
        a, b, c, d, e = p.as_tuple()
        variant = b * (c**2 + d**2) + a * (2 * b * c + c**2 + d**2 - (b - c) * e)
        truth = np.poly(jacobian(p, np.zeros(4)))[3]
        if abs(variant - truth) > 1e-8 * max(1.0, abs(truth)):
            mismatched += 1
    assert mismatched > 25


@pytest.mark.parametrize("case", ["i", "ii", "iii"])
@pytest.mark.parametrize("c,omega", [(1.0, 1.0), (-0.5, 2.0), (2.0, 0.5)])
def test_zero_hopf_construction_certifies(case, c, omega):
    d_free = -np.sqrt((c**2 + omega**2) / 3.0) if case == "ii" else None
    p = zero_hopf_params(case, c, omega=omega, d_free=d_free)
    from lhbif.model import delta

    at = np.zeros(4) if case == "i" else np.array([0.0, 0.0, 0.0, delta(p)])
    cert = is_zero_hopf(p, at)
    assert cert is not None
    assert cert.omega == pytest.approx(omega, abs=1e-8)
    assert cert.residual <= 1e-8


def test_zero_hopf_d_denominator_erratum():
    # d with denominator 3 instead of sqrt(3) does not produce the requested
    # frequency
    c, omega = 1.0, 1.0
    p_bad = SystemParams(
        a=-2 * c, b=0.0, c=c, d=-np.sqrt(c**2 + omega**2) / 3.0,
        e=(4 * c**2 + omega**2) / (3 * c),
    )
    targets = np.array([0.0, 0.0, 1j * omega, -1j * omega])
    res = spectrum_distance(np.linalg.eigvals(jacobian(p_bad, np.zeros(4))), targets)
    assert res > 1e-2


def test_is_zero_hopf_rejects_generic_point(params_example):
    assert is_zero_hopf(params_example, np.zeros(4)) is None


def test_zero_hopf_params_validation():
    with pytest.raises(DegenerateParameterError, match="c must be nonzero"):
        zero_hopf_params("i", 0.0, omega=1.0)
    with pytest.raises(DegenerateParameterError):
        zero_hopf_params("i", 1.0)  # missing omega
    with pytest.raises(DegenerateParameterError):
        zero_hopf_params("ii", 1.0, d_free=0.5)  # 3 d^2 - c^2 <= 0
    with pytest.raises(DegenerateParameterError):
        zero_hopf_params("ii", 1.0, d_free=1.0, omega=3.0)  # inconsistent omega
    with pytest.raises(DegenerateParameterError):
        zero_hopf_params("iv", 1.0, omega=1.0)


def test_spectrum_distance_is_permutation_invariant():
    eigs = np.array([1.0, 2.0, 3.0, 4.0])
    targets = np.array([4.0, 1.0, 3.0, 2.0])
    assert spectrum_distance(eigs, targets) == 0.0
