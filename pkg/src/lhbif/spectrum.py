"""Characteristic polynomials and zero-Hopf detection.

A zero-Hopf equilibrium has spectrum {0, 0, +i w, -i w} with w > 0.  The
closed-form parameter families producing one are built here and every
certificate is backed by a dense eigensolver check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import DegenerateParameterError
from .model import SystemParams, jacobian, residual

DEFAULT_TOL = 1e-8


@dataclass(frozen=True)
class QuarticCoeffs:
    """Coefficients of lambda^4 + A lambda^3 + B lambda^2 + C lambda + D."""

    A: float
    B: float
    C: float
    D: float
    #: False when the expansion point was not an equilibrium
    at_equilibrium: bool = True

    def as_array(self):
        return np.array([1.0, self.A, self.B, self.C, self.D])

    def eval(self, lam):
        return np.polyval(self.as_array(), lam)


@dataclass(frozen=True)
class ZeroHopfCertificate:
    omega: float
    eigenvalues: np.ndarray  # four complex numbers
    residual: float


def _charpoly_coeffs(m: np.ndarray) -> tuple[float, float, float, float]:
    """Coefficients of det(lambda I - m) for a 4x4 matrix via trace identities."""
    t1 = np.trace(m)
    m2 = m @ m
    t2 = np.trace(m2)
    t3 = np.trace(m2 @ m)
    a = -t1
    b = 0.5 * (t1**2 - t2)
    c = -(t1**3 - 3.0 * t1 * t2 + 2.0 * t3) / 6.0
    d = float(np.linalg.det(m))
    return float(a), float(b), float(c), float(d)


def char_poly(p: SystemParams, at) -> QuarticCoeffs:
    """Characteristic polynomial of the linearization at ``at``.

    Computed from exact trace identities, independently of any eigensolver.
    """
    a, b, c, d = _charpoly_coeffs(jacobian(p, at))
    return QuarticCoeffs(a, b, c, d, at_equilibrium=residual(p, at) <= 1e-9)


def origin_quartic(p: SystemParams) -> QuarticCoeffs:
    """Closed-form quartic coefficients at the origin.

    C uses -(b + c)e, the form consistent with expanding det(lambda I - J);
    see the variant regression tests for the sign alternative.
    """
    a, b, c, d, e = p.as_tuple()
    A = a + b + 2.0 * c
    B = 2.0 * b * c + c**2 + d**2 + a * (b + 2.0 * c - e)
    C = b * (c**2 + d**2) + a * (2.0 * b * c + c**2 + d**2 - (b + c) * e)
    D = a * b * (c**2 + d**2 - c * e)
    return QuarticCoeffs(A, B, C, D)


def zero_hopf_params(
    case: str,
    c: float,
    omega: float | None = None,
    d_free: float | None = None,
    e: float | None = None,
) -> SystemParams:
    """Parameters making the relevant equilibrium a zero-Hopf point.

    * case "i" (origin): (a, b, d, e) =
      (-2c, 0, -sqrt(c^2+omega^2)/sqrt(3), (4c^2+omega^2)/(3c)).
    * case "ii" (line point (0,0,0,Delta)): a = -2c, b = 0, d = d_free with
      3 d^2 - c^2 > 0; the Hopf frequency is sqrt(3 d^2 - c^2).  ``e`` is free
      (default 0, which keeps Delta nonzero).
    * case "iii" (symmetric pair in the b -> 0 limit): a = -2c, b = 0,
      d = -sqrt(c^2+omega^2)/sqrt(3); ``e`` free (default 0).

    The d-value uses denominator sqrt(3): imposing spectrum {0,0,+-i omega}
    on the origin quartic forces d^2 = (c^2+omega^2)/3.  The variant with
    denominator 3 fails the eigensolver check (see regression tests).
    """
    if c == 0.0:
        raise DegenerateParameterError("c must be nonzero")
    if case == "i":
        if omega is None or omega <= 0.0:
            raise DegenerateParameterError("case i needs omega > 0")
        d = -np.sqrt(c**2 + omega**2) / np.sqrt(3.0)
        return SystemParams(
            a=-2.0 * c, b=0.0, c=c, d=d, e=(4.0 * c**2 + omega**2) / (3.0 * c)
        )
    if case == "ii":
        if d_free is None:
            raise DegenerateParameterError("case ii needs d_free")
        w2 = 3.0 * d_free**2 - c**2
        if w2 <= 0.0:
            raise DegenerateParameterError("case ii needs 3 d^2 - c^2 > 0")
        if omega is not None and abs(omega - np.sqrt(w2)) > 1e-12 * max(1.0, omega):
            raise DegenerateParameterError(
                f"omega={omega} inconsistent with sqrt(3 d^2 - c^2)={np.sqrt(w2)}"
            )
        return SystemParams(a=-2.0 * c, b=0.0, c=c, d=d_free, e=0.0 if e is None else e)
    if case == "iii":
        if omega is None or omega <= 0.0:
            raise DegenerateParameterError("case iii needs omega > 0")
        d = -np.sqrt(c**2 + omega**2) / np.sqrt(3.0)
        return SystemParams(a=-2.0 * c, b=0.0, c=c, d=d, e=0.0 if e is None else e)
    raise DegenerateParameterError(f"unknown case {case!r}")


def spectrum_distance(eigs, targets) -> float:
    """Optimal-matching distance between two multisets of complex numbers."""
    eigs = np.asarray(eigs)
    targets = np.asarray(targets)
    cost = np.abs(eigs[:, None] - targets[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def is_zero_hopf(p: SystemParams, at, tol: float = DEFAULT_TOL):
    """Certificate that the spectrum at ``at`` is {0, 0, +-i w}, or None.

    w is estimated as the largest positive imaginary part of the spectrum;
    the certificate is issued when the optimal multiset match of the numeric
    eigenvalues against {0, 0, i w, -i w} stays within ``tol`` and w > tol.
    """
    eigs = np.linalg.eigvals(jacobian(p, at))
    omega = float(np.max(eigs.imag))
    if omega <= tol:
        return None
    targets = np.array([0.0, 0.0, 1j * omega, -1j * omega])
    res = spectrum_distance(eigs, targets)
    if res > tol:
        return None
    order = np.argsort(-eigs.imag)  # conjugate pair first, +i omega leading
    return ZeroHopfCertificate(omega=omega, eigenvalues=eigs[order], residual=res)
