import numpy as np
import pytest

from lhbif import (
    SIGMA,
    DegenerateParameterError,
    EquilibriumKind,
    SystemParams,
    delta,
    equilibria,
    jacobian,
    plus_equilibrium,
    residual,
    vector_field,
)
from lhbif.model import quadratic_part


def random_params(rng, n):
    for _ in range(n):
        a, b, d, e = rng.uniform(-3, 3, size=4)
        c = rng.uniform(0.2, 3.0) * rng.choice([-1.0, 1.0])
        yield SystemParams(a=a, b=b, c=c, d=d, e=e)


def test_vector_field_componentwise(params_example):
    p = params_example
    s = np.array([0.5, -1.0, 2.0, 0.25])
    x, y, z, w = s
    expected = [
        p.a * (y - x),
        -p.c * y - p.d * z + (p.e - w) * x,
        p.d * y - p.c * z,
        -p.b * w + x * y,
    ]
    assert np.allclose(vector_field(p, s), expected, atol=0.0)


def test_sigma_equivariance(rng):
    for p in random_params(rng, 20):
        s = rng.uniform(-2, 2, size=4)
        lhs = vector_field(p, SIGMA @ s)
        rhs = SIGMA @ vector_field(p, s)
        assert np.allclose(lhs, rhs, atol=1e-14)


def test_jacobian_matches_finite_differences(rng):
    h = 1e-6
    for p in random_params(rng, 10):
        s = rng.uniform(-2, 2, size=4)
        jac = jacobian(p, s)
        for j in range(4):
            dv = np.zeros(4)
            dv[j] = h
            fd = (vector_field(p, s + dv) - vector_field(p, s - dv)) / (2 * h)
            assert np.allclose(jac[:, j], fd, atol=1e-6)


def test_affine_plus_quadratic_decomposition_is_exact(rng):
    # vf(s0 + h v) = vf(s0) + h J(s0) v + h^2 Q(v) with no remainder
    for p in random_params(rng, 10):
        s0 = rng.uniform(-2, 2, size=4)
        v = rng.uniform(-2, 2, size=4)
        h = 0.37
        lhs = vector_field(p, s0 + h * v)
        rhs = vector_field(p, s0) + h * (jacobian(p, s0) @ v) + h**2 * quadratic_part(v)
        assert np.allclose(lhs, rhs, rtol=1e-14, atol=1e-14)


def test_delta_value_and_c_zero_rejection(params_example):
    assert delta(params_example) == pytest.approx(1.0)
    with pytest.raises(DegenerateParameterError, match="c must be nonzero"):
        delta(SystemParams(a=1, b=1, c=0.0, d=1, e=1))


def test_equilibria_symmetric_pair(params_example):
    eq = equilibria(params_example)
    assert eq.delta == pytest.approx(1.0)
    assert not eq.has_line
    kinds = [pt.kind for pt in eq.points]
    assert kinds == [
        EquilibriumKind.ORIGIN,
        EquilibriumKind.PLUS_BRANCH,
        EquilibriumKind.MINUS_BRANCH,
    ]
    plus = eq.points[1].state
    minus = eq.points[2].state
    assert np.allclose(minus, SIGMA @ plus, atol=0.0)
    for pt in eq.points:
        assert residual(params_example, pt.state) <= 1e-12


def test_equilibria_third_component_carries_d_over_c():
    p = SystemParams(a=2.0, b=1.0, c=2.0, d=1.0, e=5.0)  # Delta = 5/4
    plus = plus_equilibrium(p)
    root = np.sqrt(p.b * delta(p))
    assert plus[0] == pytest.approx(root)
    assert plus[1] == pytest.approx(root)
    assert plus[2] == pytest.approx(p.d * root / p.c)
    assert plus[3] == pytest.approx(delta(p))
    assert residual(p, plus) <= 1e-13


def test_equilibrium_line_at_b_zero():
    p = SystemParams(a=2.0, b=0.0, c=1.0, d=1.0, e=3.0)
    eq = equilibria(p)
    assert eq.has_line
    kinds = [pt.kind for pt in eq.points]
    assert EquilibriumKind.LINE_REPRESENTATIVE in kinds
    line_pt = eq.points[kinds.index(EquilibriumKind.LINE_REPRESENTATIVE)].state
    assert np.allclose(line_pt, [0, 0, 0, eq.delta], atol=0.0)
    # any w-axis point is an equilibrium when b = 0
    assert residual(p, [0.0, 0.0, 0.0, -7.3]) == 0.0


def test_origin_only_when_delta_negative():
    p = SystemParams(a=2.0, b=1.0, c=1.0, d=2.0, e=3.0)  # Delta = -2
    eq = equilibria(p)
    assert [pt.kind for pt in eq.points] == [EquilibriumKind.ORIGIN]
    with pytest.raises(DegenerateParameterError):
        plus_equilibrium(p)


def test_branch_merge_rate_as_b_vanishes():
    base = dict(a=1.0, c=1.0, d=1.0, e=4.0)  # Delta = 2
    bs = 1e-3 * 0.5 ** np.arange(8)
    gaps = [
        np.linalg.norm(
            plus_equilibrium(SystemParams(b=float(b), **base))
            - SIGMA @ plus_equilibrium(SystemParams(b=float(b), **base))
        )
        for b in bs
    ]
    slope = np.polyfit(np.log(bs), np.log(gaps), 1)[0]
    assert slope == pytest.approx(0.5, abs=0.05)
