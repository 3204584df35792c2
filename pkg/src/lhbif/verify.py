"""Self-contained acceptance suite: eight oracle-backed checks.

Each criterion returns a CriterionResult with a single pass/fail verdict and
a human-readable detail string.  The checks are pure (seeded randomness) and
are shared between the command-line ``verify --all`` subcommand and the test
suite.

Two of the checks double as erratum regressions: they assert that known
mis-printed variants of the source formulas *fail* the oracle, so a silent
revert to the printed form cannot pass.  Criteria 5 and 6 assert the
behaviour of the symmetric-pair family that the orbit oracle actually
verifies (square-root amplitude law and the measured Floquet exponents); see
the repository notes for the measurements behind the constants.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .averaging import average_quadrature, averaged_map_closed, averaged_zeros
from .model import SystemParams, delta, equilibria, jacobian, plus_equilibrium, residual
from .orbits import epsilon_sweep
from .reduction import UnfoldingSpec, first_order_field_numeric
from .spectrum import origin_quartic, spectrum_distance, zero_hopf_params

RNG_SEED = 20260823

#: measured Floquet-exponent limits of the symmetric-pair (case iii) orbit,
#: log|mu_k| / (2 pi eps / omega) as eps -> 0, for the example family
#: (c=1, omega=1, e=3, a1=1, b1=1); see notes on the amplitude-law erratum
CASE_III_EXPONENT_LIMITS = (-8.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)

CASE_I_EXAMPLE = dict(case="i", c=1.0, omega=1.0, a1=1.0, b1=1.0, d1=0.0, e1=1.0)
CASE_II_EXAMPLE = dict(case="ii", c=1.0, d=2.0, e=6.0, a1=1.0, b1=1.0)
CASE_II_FIVE_ZEROS = dict(case="ii", c=1.0, d=0.7, e=1.0, a1=1.0, b1=1.0)
CASE_III_EXAMPLE = dict(case="iii", c=1.0, omega=1.0, e=3.0, a1=1.0, b1=1.0)

EPS_SWEEP = (1e-2, 5e-3, 2.5e-3)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    @property
    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number} ({self.name}): {tag} - {self.detail}"


def _result(number, name, t0, passed, detail) -> CriterionResult:
    return CriterionResult(
        number=number,
        name=name,
        passed=bool(passed),
        detail=detail,
        seconds=time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# criterion 1: zero-Hopf spectra on a parameter grid + d-denominator erratum
# ---------------------------------------------------------------------------


def _zero_hopf_point(case, params):
    if case == "i":
        return np.zeros(4)
    return np.array([0.0, 0.0, 0.0, delta(params)])


def criterion_1(tol: float = 1e-8) -> CriterionResult:
    t0 = time.perf_counter()
    worst = 0.0
    erratum_best = np.inf
    for c, omega in product((0.5, -0.5, 1.0, -1.0, 2.0, -2.0), (0.5, 1.0, 2.0, 3.0)):
        targets = np.array([0.0, 0.0, 1j * omega, -1j * omega])
        for case in ("i", "ii", "iii"):
            d_free = -np.sqrt((c**2 + omega**2) / 3.0) if case == "ii" else None
            p = zero_hopf_params(case, c, omega=omega, d_free=d_free)
            at = _zero_hopf_point(case, p)
            res = spectrum_distance(np.linalg.eigvals(jacobian(p, at)), targets)
            worst = max(worst, res)
        # mis-printed variant: d with denominator 3 instead of sqrt(3)
        d_bad = -np.sqrt(c**2 + omega**2) / 3.0
        for case, e in (("i", (4 * c**2 + omega**2) / (3 * c)), ("iii", 0.0)):
            p_bad = SystemParams(a=-2.0 * c, b=0.0, c=c, d=d_bad, e=e)
            at = _zero_hopf_point(case, p_bad)
            res = spectrum_distance(np.linalg.eigvals(jacobian(p_bad, at)), targets)
            erratum_best = min(erratum_best, res)
    ok = worst <= tol and erratum_best > tol
    detail = (
        f"grid residual max {worst:.2e} (tol {tol:.0e}); "
        f"denominator-3 variant residual min {erratum_best:.2e} (must exceed tol)"
    )
    return _result(1, "zero-Hopf spectra", t0, ok, detail)


# ---------------------------------------------------------------------------
# criterion 2: quartic coefficients vs det(lambda I - J) + sign erratum
# ---------------------------------------------------------------------------


def criterion_2(tol: float = 1e-8, draws: int = 100) -> CriterionResult:
    t0 = time.perf_counter()
    rng = np.random.default_rng(RNG_SEED)
    worst = 0.0
    erratum_best = 0.0
    for _ in range(draws):
        a, b, d, e = rng.uniform(-3.0, 3.0, size=4)
        c = rng.uniform(0.2, 3.0) * rng.choice([-1.0, 1.0])
        p = SystemParams(a=a, b=b, c=c, d=d, e=e)
        coeffs = origin_quartic(p)
        numeric = np.poly(jacobian(p, np.zeros(4)))  # monic quartic, length 5
        got = np.array([coeffs.A, coeffs.B, coeffs.C, coeffs.D])
        scale = np.maximum(1.0, np.abs(numeric[1:]))
        worst = max(worst, float(np.max(np.abs(got - numeric[1:]) / scale)))
        # mis-printed C variant uses (b - c) e instead of (b + c) e
        c_bad = b * (c**2 + d**2) + a * (2 * b * c + c**2 + d**2 - (b - c) * e)
        erratum_best = max(
            erratum_best, abs(c_bad - numeric[3]) / max(1.0, abs(numeric[3]))
        )
    ok = worst <= tol and erratum_best > tol
    detail = (
        f"coefficient mismatch max {worst:.2e} over {draws} draws (tol {tol:.0e}); "
        f"(b-c)e variant mismatch max {erratum_best:.2e} (must exceed tol)"
    )
    return _result(2, "characteristic quartic", t0, ok, detail)


# ---------------------------------------------------------------------------
# criterion 3: averaging consistency, numeric pipeline vs closed forms
# ---------------------------------------------------------------------------


def criterion_3(tol: float = 1e-6) -> CriterionResult:
    t0 = time.perf_counter()
    specs = [
        UnfoldingSpec(**CASE_I_EXAMPLE),
        UnfoldingSpec(case="i", c=-0.8, omega=2.0, a1=0.5, b1=1.5, d1=0.3, e1=-0.7),
        UnfoldingSpec(**CASE_II_EXAMPLE),
        UnfoldingSpec(case="ii", c=-1.0, d=1.2, e=0.5, a1=-0.4, b1=0.9),
        UnfoldingSpec(**CASE_III_EXAMPLE),
        UnfoldingSpec(case="iii", c=0.7, omega=1.5, e=-1.0, a1=1.1, b1=-0.6),
    ]
    worst = 0.0
    for spec in specs:
        numeric = first_order_field_numeric(spec)
        closed_avg = averaged_map_closed(spec)
        for r, z, w in product(
            np.linspace(0.2, 1.0, 5), np.linspace(-1.0, 1.0, 5), np.linspace(-1.0, 1.0, 5)
        ):
            state = (r, z, w)
            diff = np.abs(average_quadrature(numeric, state) - closed_avg(state))
            worst = max(worst, float(np.max(diff)))
    # the corrected axial average of case ii must reproduce all five source
    # zeros; pick a family where every radicand is positive so all five exist
    spec5 = UnfoldingSpec(**CASE_II_FIVE_ZEROS)
    zeros5 = [z for z in averaged_zeros(spec5) if not z.trivial]
    zero_resid = max((z.residual for z in zeros5), default=np.inf)
    count5 = sum(z.multiplicity for z in zeros5)
    ok = worst <= tol and count5 == 5 and zero_resid <= 1e-10
    detail = (
        f"quadrature-vs-closed max {worst:.2e} over 6 specs x 125 states "
        f"(tol {tol:.0e}); corrected axial map: {count5}/5 zeros, "
        f"residual max {zero_resid:.2e} (tol 1e-10)"
    )
    return _result(3, "averaging consistency", t0, ok, detail)


# ---------------------------------------------------------------------------
# criterion 4: zeros and spectra of the averaged maps at the example specs
# ---------------------------------------------------------------------------


def _closest_zero(zeros, location):
    location = np.asarray(location, dtype=float)
    return min(zeros, key=lambda z: np.linalg.norm(z.location - location))


def criterion_4(tol: float = 1e-8) -> CriterionResult:
    t0 = time.perf_counter()
    errs = []

    zeros_i = [z for z in averaged_zeros(UnfoldingSpec(**CASE_I_EXAMPLE)) if not z.trivial]
    for target in ([0.0, -0.5, 1.0], [0.0, 0.5, 1.0]):
        errs.append(np.linalg.norm(_closest_zero(zeros_i, target).location - target))
    s34 = _closest_zero(zeros_i, [0.8660254, 0.0, 0.5])
    errs.append(np.linalg.norm(s34.location - [np.sqrt(3.0) / 2.0, 0.0, 0.5]))
    errs.append(abs(s34.jac_det - (-1.0)))

    zeros_iii = [
        z for z in averaged_zeros(UnfoldingSpec(**CASE_III_EXAMPLE)) if not z.trivial
    ]
    s12 = _closest_zero(zeros_iii, [0.6123724, 0.0, -0.5])
    errs.append(np.linalg.norm(s12.location - [np.sqrt(0.375), 0.0, -0.5]))
    errs.append(abs(s12.jac_det - (-1.0)))
    expected = np.array([-1.0, 0.5 + 0.8660254j, 0.5 - 0.8660254j])
    errs.append(spectrum_distance(s12.eigenvalues, expected))

    worst = float(np.max(errs))
    ok = worst <= tol
    detail = f"zero locations / determinants / eigenvalues max error {worst:.2e} (tol {tol:.0e})"
    return _result(4, "averaged-map zeros and spectra", t0, ok, detail)


# ---------------------------------------------------------------------------
# criteria 5 and 6: orbit shooting sweeps (results cached across criteria)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _sweep(case: str):
    if case == "i":
        spec = UnfoldingSpec(**CASE_I_EXAMPLE)
        seed_target = [0.8660254, 0.0, 0.5]
    else:
        spec = UnfoldingSpec(**CASE_III_EXAMPLE)
        seed_target = [0.6123724, 0.0, -0.5]
    zeros = [z for z in averaged_zeros(spec) if not z.trivial]
    seed = _closest_zero(zeros, seed_target)
    return spec, seed, epsilon_sweep(spec, seed, list(EPS_SWEEP))


def criterion_5() -> CriterionResult:
    t0 = time.perf_counter()
    problems = []

    _, _, rep_i = _sweep("i")
    if rep_i.failures:
        problems.append(f"origin-family shooting failures {rep_i.failures}")
    closures_i = [o.closure_residual for o in rep_i.orbits]
    if closures_i and max(closures_i) > 1e-8:
        problems.append(f"origin-family closure {max(closures_i):.2e} > 1e-8")
    if not 0.8 <= rep_i.fitted_order <= 1.2:
        problems.append(f"origin-family distance order {rep_i.fitted_order:.3f} not in [0.8, 1.2]")
    for eps, perr in zip(rep_i.eps_grid, rep_i.period_errors):
        if not perr <= 5 * eps:
            problems.append(f"origin-family period error {perr:.2e} > 5*{eps:.0e}")

    _, _, rep_iii = _sweep("iii")
    if rep_iii.failures:
        problems.append(f"pair-family shooting failures {rep_iii.failures}")
    closures_iii = [o.closure_residual for o in rep_iii.orbits]
    if closures_iii and max(closures_iii) > 1e-8:
        problems.append(f"pair-family closure {max(closures_iii):.2e} > 1e-8")
    for eps, perr in zip(rep_iii.eps_grid, rep_iii.period_errors):
        if not perr <= 5 * eps:
            problems.append(f"pair-family period error {perr:.2e} > 5*{eps:.0e}")
    # Verified amplitude law for the symmetric-pair family: the orbit radius
    # in original coordinates scales like sqrt(eps) (Hopf law), so the
    # eps-rescaled section point moves like 1/sqrt(eps) away from the
    # first-order seed.  The printed first-order claim (seed distance of
    # order eps^1) is an erratum; see the repository notes.
    if not 0.45 <= rep_iii.state_order <= 0.55:
        problems.append(
            f"pair-family amplitude order {rep_iii.state_order:.3f} not in [0.45, 0.55]"
        )
    if not -0.7 <= rep_iii.fitted_order <= -0.3:
        problems.append(
            f"pair-family section-distance order {rep_iii.fitted_order:.3f} "
            "not in [-0.7, -0.3]"
        )

    ok = not problems
    detail = (
        f"origin family: closure max {max(closures_i, default=np.inf):.1e}, "
        f"order {rep_i.fitted_order:.3f}; pair family: closure max "
        f"{max(closures_iii, default=np.inf):.1e}, amplitude order "
        f"{rep_iii.state_order:.3f} (sqrt-eps law), section-distance order "
        f"{rep_iii.fitted_order:.3f}"
    )
    if problems:
        detail = "; ".join(problems)
    return _result(5, "orbit bifurcation sweep", t0, ok, detail)


def criterion_6() -> CriterionResult:
    t0 = time.perf_counter()
    spec, seed, rep = _sweep("iii")
    problems = []

    for orb in rep.orbits:
        if not np.max(np.abs(orb.nontrivial_multipliers)) > 1.0:
            problems.append(f"orbit at eps={orb.eps} has no unstable multiplier")
    if not (rep.stability_agreement and all(rep.stability_agreement)):
        problems.append(f"sign disagreement with averaged spectrum: {rep.stability_agreement}")

    smallest = rep.orbits[-1] if rep.orbits else None
    exps = None
    if smallest is not None:
        scale = 2.0 * np.pi * smallest.eps / spec.omega
        exps = np.sort(np.log(np.abs(smallest.nontrivial_multipliers)) / scale)
        # exact trace identity: the nontrivial exponents sum to -(a1 + b1)
        sum_target = -(spec.a1 + spec.b1)
        if abs(float(np.sum(exps)) - sum_target) > 1e-2 * max(1.0, abs(sum_target)):
            problems.append(f"exponent sum {np.sum(exps):.4f} != {sum_target}")
        # measured limits of the true orbit's exponents (5% tolerance)
        limits = np.sort(CASE_III_EXPONENT_LIMITS)
        if np.max(np.abs(exps - limits) / np.abs(limits)) > 0.05:
            problems.append(f"exponents {np.round(exps, 4)} != limits {np.round(limits, 4)}")
        # erratum regression: the printed first-order prediction (averaged
        # Jacobian eigenvalues -1, 0.5, 0.5) does NOT match within 20%
        printed = np.sort(np.real(np.asarray(seed.eigenvalues)))
        printed_matches = np.all(np.abs(exps - printed) <= 0.2 * np.abs(printed))
        if printed_matches:
            problems.append("printed exponent prediction unexpectedly matches")
    else:
        problems.append("no orbit at the smallest eps")

    ok = not problems
    if problems:
        detail = "; ".join(problems)
    else:
        detail = (
            f"all {len(rep.orbits)} orbits unstable; exponents at "
            f"eps={smallest.eps:g}: {np.round(exps, 4).tolist()} vs measured "
            f"limits {np.round(np.sort(CASE_III_EXPONENT_LIMITS), 4).tolist()}; "
            "printed first-order prediction (-1, 0.5, 0.5) rejected as expected"
        )
    return _result(6, "orbit stability ground truth", t0, ok, detail)


# ---------------------------------------------------------------------------
# criterion 7: zero-count bounds over a random spec sweep
# ---------------------------------------------------------------------------


def criterion_7(sweeps: int = 200) -> CriterionResult:
    t0 = time.perf_counter()
    rng = np.random.default_rng(RNG_SEED + 7)
    bounds = {"i": 4, "ii": 5, "iii": 2}
    worst = {case: 0 for case in bounds}
    for k in range(sweeps):
        case = ("i", "ii", "iii")[k % 3]
        c = rng.uniform(0.3, 2.0) * rng.choice([-1.0, 1.0])
        a1, b1 = rng.uniform(-2.0, 2.0, size=2)
        if case == "i":
            spec = UnfoldingSpec(
                case="i", c=c, omega=rng.uniform(0.5, 3.0), a1=a1, b1=b1,
                d1=rng.uniform(-2.0, 2.0), e1=rng.uniform(-2.0, 2.0),
            )
        elif case == "ii":
            d = rng.uniform(1.1, 3.0) * abs(c) / np.sqrt(3.0) * rng.choice([-1.0, 1.0])
            spec = UnfoldingSpec(case="ii", c=c, d=d, e=rng.uniform(-3.0, 3.0), a1=a1, b1=b1)
        else:
            spec = UnfoldingSpec(
                case="iii", c=c, omega=rng.uniform(0.5, 3.0), e=rng.uniform(-3.0, 3.0),
                a1=a1, b1=b1, d1=rng.uniform(-2.0, 2.0),
            )
        count = sum(z.multiplicity for z in averaged_zeros(spec) if not z.trivial)
        worst[case] = max(worst[case], count)
        if count > bounds[case]:
            detail = f"case {case} produced {count} nontrivial zeros (> {bounds[case]})"
            return _result(7, "zero-count bounds", t0, False, detail)
    detail = (
        f"max counts over {sweeps} specs: "
        + ", ".join(f"case {c}: {worst[c]}/{bounds[c]}" for c in bounds)
    )
    return _result(7, "zero-count bounds", t0, True, detail)


# ---------------------------------------------------------------------------
# criterion 8: symmetric equilibria residuals and branch-merge exponent
# ---------------------------------------------------------------------------


def criterion_8() -> CriterionResult:
    t0 = time.perf_counter()
    rng = np.random.default_rng(RNG_SEED + 8)
    worst = 0.0
    found = 0
    while found < 50:
        a, d = rng.uniform(-3.0, 3.0, size=2)
        b = rng.uniform(0.01, 3.0)
        c = rng.uniform(0.2, 3.0) * rng.choice([-1.0, 1.0])
        e = rng.uniform(-3.0, 3.0)
        p = SystemParams(a=a, b=b, c=c, d=d, e=e)
        if b * delta(p) <= 0.0:
            continue
        found += 1
        eq = equilibria(p)
        for point in eq.points:
            worst = max(worst, residual(p, point.state))
    # branch merging: ||p+ - p-|| ~ b^(1/2) as b -> 0
    base = dict(a=1.0, c=1.0, d=1.0, e=4.0)  # Delta = 2 > 0
    bs = 1e-3 * 0.5 ** np.arange(10)
    gaps = []
    for b in bs:
        p = SystemParams(b=float(b), **base)
        plus = plus_equilibrium(p)
        minus = np.array([-plus[0], -plus[1], -plus[2], plus[3]])
        gaps.append(np.linalg.norm(plus - minus))
    slope = float(np.polyfit(np.log(bs), np.log(gaps), 1)[0])
    ok = worst <= 1e-12 and 0.45 <= slope <= 0.55
    detail = (
        f"equilibrium residual max {worst:.2e} over 50 draws (tol 1e-12); "
        f"branch-merge exponent {slope:.4f} (target 0.5 +- 0.05)"
    )
    return _result(8, "symmetric equilibria", t0, ok, detail)


ALL_CRITERIA = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
)


def run_all() -> list[CriterionResult]:
    """Run all eight acceptance criteria and return their results."""
    return [fn() for fn in ALL_CRITERIA]
