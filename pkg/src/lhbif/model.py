"""The four-dimensional Lorenz-Haken vector field, its Jacobian and equilibria.

The system is

    x' = a (y - x)
    y' = -c y - d z + (e - w) x
    z' = d y - c z
    w' = -b w + x y

with real parameters (a, b, c, d, e).  It is equivariant under
sigma = diag(-1, -1, -1, 1), a rotation by pi around the w-axis.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateParameterError

# Discrete symmetry (x, y, z, w) -> (-x, -y, -z, w).
SIGMA = np.diag([-1.0, -1.0, -1.0, 1.0])

#: residual tolerance for accepting a point as an equilibrium (scaled)
RESIDUAL_TOL = 1e-12


@dataclass(frozen=True)
class SystemParams:
    """The five real parameters of the system."""

    a: float
    b: float
    c: float
    d: float
    e: float

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d, self.e)

    def scale(self) -> float:
        """max(1, ||params||_inf), used to scale residual tolerances."""
        return max(1.0, max(abs(v) for v in self.as_tuple()))

    def require_c_nonzero(self):
        if self.c == 0.0:
            raise DegenerateParameterError("c must be nonzero")


class EquilibriumKind(Enum):
    ORIGIN = "origin"
    PLUS_BRANCH = "plus"
    MINUS_BRANCH = "minus"
    LINE_REPRESENTATIVE = "line"


@dataclass(frozen=True)
class Equilibrium:
    kind: EquilibriumKind
    state: np.ndarray  # shape (4,)


@dataclass(frozen=True)
class EquilibriumSet:
    delta: float
    points: tuple[Equilibrium, ...]
    #: True when b = 0 and the w-axis carries a line of equilibria
    has_line: bool = False


def vector_field(p: SystemParams, s) -> np.ndarray:
    """Right-hand side of the system at state ``s`` = (x, y, z, w)."""
    x, y, z, w = s
    return np.array(
        [
            p.a * (y - x),
            -p.c * y - p.d * z + (p.e - w) * x,
            p.d * y - p.c * z,
            -p.b * w + x * y,
        ]
    )


def quadratic_part(s) -> np.ndarray:
    """The bilinear terms of the field: (0, -w x, 0, x y).

    The field is affine plus this quadratic, so
    vf(s0 + h v) = vf(s0) + h J(s0) v + h^2 Q(v) exactly.
    """
    x, y, _, w = s
    return np.array([0.0, -w * x, 0.0, x * y])


def jacobian(p: SystemParams, s) -> np.ndarray:
    """Exact Jacobian of :func:`vector_field` at ``s``."""
    x, y, _, w = s
    return np.array(
        [
            [-p.a, p.a, 0.0, 0.0],
            [p.e - w, -p.c, -p.d, -x],
            [0.0, p.d, -p.c, 0.0],
            [y, x, 0.0, -p.b],
        ]
    )


def delta(p: SystemParams) -> float:
    """Delta = (e c - c^2 - d^2) / c; requires c != 0."""
    p.require_c_nonzero()
    return (p.e * p.c - p.c**2 - p.d**2) / p.c


def residual(p: SystemParams, s) -> float:
    """Scaled max-norm residual of the field at ``s``."""
    return float(np.max(np.abs(vector_field(p, s)))) / p.scale()


def equilibria(p: SystemParams) -> EquilibriumSet:
    """All equilibria of the system for parameters ``p``.

    With D = (ec - c^2 - d^2)/c:

    * D <= 0, b != 0: only the origin.
    * D > 0,  b != 0: the origin plus the symmetric pair
      (+-sqrt(bD), +-sqrt(bD), +-d sqrt(bD)/c, D) when bD > 0.  The origin is
      a zero of the field in every case, so it is always listed.  (The third
      component carries the factor d/c: it is forced by d y - c z = 0.)
    * b = 0, D != 0: a line of equilibria along the w-axis; the representative
      (0, 0, 0, D) is returned together with the origin.
    """
    d_val = delta(p)
    origin = Equilibrium(EquilibriumKind.ORIGIN, np.zeros(4))
    points = [origin]
    has_line = False
    if p.b == 0.0:
        has_line = True
        if d_val != 0.0:
            points.append(
                Equilibrium(
                    EquilibriumKind.LINE_REPRESENTATIVE,
                    np.array([0.0, 0.0, 0.0, d_val]),
                )
            )
    elif d_val > 0.0 and p.b * d_val > 0.0:
        root = np.sqrt(p.b * d_val)
        plus = np.array([root, root, p.d * root / p.c, d_val])
        points.append(Equilibrium(EquilibriumKind.PLUS_BRANCH, plus))
        points.append(Equilibrium(EquilibriumKind.MINUS_BRANCH, SIGMA @ plus))
    eq_set = EquilibriumSet(delta=d_val, points=tuple(points), has_line=has_line)
    for eq in eq_set.points:
        res = residual(p, eq.state)
        if res > RESIDUAL_TOL:
            raise AssertionError(
                f"equilibrium {eq.kind.value} has residual {res:.3e} > {RESIDUAL_TOL}"
            )
    return eq_set


def plus_equilibrium(p: SystemParams) -> np.ndarray:
    """The plus-branch equilibrium; requires b*Delta > 0."""
    d_val = delta(p)
    if p.b * d_val <= 0.0:
        raise DegenerateParameterError(
            f"plus-branch equilibrium needs b*Delta > 0, got {p.b * d_val:.3e}"
        )
    root = np.sqrt(p.b * d_val)
    return np.array([root, root, p.d * root / p.c, d_val])
