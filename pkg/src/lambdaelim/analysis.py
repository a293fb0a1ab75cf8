"""Error metrics, order-of-convergence checks and expansion verification.

All error thresholds used here (ratio tolerance, slope bounds, floors) are
harness choices; the underlying statements only give orders in ``eps``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import exact
from .core import (
    REFERENCE_INITIAL,
    DegeneracyError,
    LambdaParams,
    RegimeError,
    State3,
    Trajectory,
    reduce,
)
from .elim import (
    EffectiveHamiltonian2,
    propagate_effective,
    rough_effective,
    shifted_rough_effective,
)

__all__ = [
    "ResonanceError",
    "ErrorReport",
    "ScalingFit",
    "RatioTest",
    "ExpansionResidual",
    "driven_mode_solution",
    "driven_mode_rhs",
    "amplitude_error",
    "compare_trajectories",
    "effective_method",
    "scaling_study",
    "ratio_test",
    "expansion_check",
    "expansion_study",
]

RESIDUAL_FLOOR = 1e-12


class ResonanceError(RegimeError):
    """A driving frequency hits a resonant denominator."""


# --- driven single-mode equation ---------------------------------------------


def _check_denominator(den, amp, what):
    if amp != 0 and abs(den) == 0.0:
        raise ResonanceError(f"resonant denominator in {what} term")


def driven_mode_solution(f0, sign, delta, omega, a_omega, w, a_big, big_delta, t, eta=0.0):
    """Solution of ``i f' + (s delta/2 - eta D) f = (Omega/2)(A_w e^{-i(w + eta D)t}
    + A_D e^{-i D(1 + eta)t})`` with ``f(0) = f0`` and ``s = sign``.

    For ``eta = 0`` this is

        f = f0 e^{i s delta t/2} + Omega A_w/(2w + s delta) (e^{-iwt} - e^{i s delta t/2})
            + Omega A_D/(2D + s delta) (e^{-iDt} - e^{i s delta t/2}),

    and for general ``eta`` the same expression times ``exp(-i eta D t)``.
    Passing ``a_big = 0`` gives the solution with the fast drive dropped.

    Raises
    ------
    ResonanceError
        If ``2w + s delta`` or ``2D + s delta`` vanishes for a nonzero amplitude.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    t = np.asarray(t, dtype=float)
    den_w = 2 * w + sign * delta
    den_d = 2 * big_delta + sign * delta
    _check_denominator(den_w, a_omega, "slow")
    _check_denominator(den_d, a_big, "fast")
    free = np.exp(1j * sign * delta * t / 2)
    f = f0 * free
    if a_omega != 0:
        f = f + omega * a_omega / den_w * (np.exp(-1j * w * t) - free)
    if a_big != 0:
        f = f + omega * a_big / den_d * (np.exp(-1j * big_delta * t) - free)
    if eta != 0:
        f = f * np.exp(-1j * eta * big_delta * t)
    return f


def driven_mode_rhs(omega, a_omega, w, a_big, big_delta, t, eta=0.0):
    """Right-hand side of the driven equation at times `t`."""
    t = np.asarray(t, dtype=float)
    return 0.5 * omega * (
        a_omega * np.exp(-1j * (w + eta * big_delta) * t)
        + a_big * np.exp(-1j * big_delta * (1 + eta) * t)
    )


# --- trajectory comparison ---------------------------------------------------


@dataclass(frozen=True)
class ErrorReport:
    """Worst-case discrepancy between two trajectories on a shared grid."""

    max_amplitude_error: float
    max_population_error: float
    time_of_max: float
    epsilon: float
    reference: str
    test: str


def _shared(a: Trajectory, b: Trajectory):
    if a.times.shape != b.times.shape or not np.array_equal(a.times, b.times):
        raise ValueError("trajectories are sampled on different time grids")
    n = min(a.amplitudes.shape[1], b.amplitudes.shape[1])
    return a.amplitudes[:, :n], b.amplitudes[:, :n]


def amplitude_error(a: Trajectory, b: Trajectory) -> np.ndarray:
    """Pointwise Euclidean distance between the shared amplitude components."""
    x, y = _shared(a, b)
    return np.linalg.norm(x - y, axis=1)


def compare_trajectories(reference: Trajectory, test: Trajectory, params: LambdaParams | None = None) -> ErrorReport:
    """Max-over-time amplitude and population errors.

    Only the components present in both trajectories are compared, so an
    exact three-level run against an effective two-level run compares
    ``(alpha, beta)``. Effective Hamiltonians from shifted pictures are
    already expressed in the natural picture, so no phase realignment is
    needed here.
    """
    x, y = _shared(reference, test)
    dist = np.linalg.norm(x - y, axis=1)
    pop = np.abs(np.abs(x) ** 2 - np.abs(y) ** 2).max(axis=1)
    i = int(np.argmax(dist))
    eps = np.nan
    if params is not None:
        try:
            eps = reduce(params).epsilon
        except DegeneracyError:
            eps = 0.0
    return ErrorReport(
        max_amplitude_error=float(dist[i]),
        max_population_error=float(pop.max()),
        time_of_max=float(reference.times[i]),
        epsilon=float(eps),
        reference=reference.label,
        test=test.label,
    )


# --- scaling study -----------------------------------------------------------


@dataclass(frozen=True)
class ScalingFit:
    """Least-squares fit ``log(error) = slope * log(eps) + intercept``."""

    epsilons: np.ndarray
    errors: np.ndarray
    slope: float
    intercept: float
    residual: float
    method: str = ""

    @property
    def ratios(self) -> np.ndarray:
        """Successive error ratios ``err[i] / err[i + 1]``."""
        return self.errors[:-1] / self.errors[1:]


def effective_method(method, eta: float = 0.0, e0: float = 0.0) -> Callable[[LambdaParams], EffectiveHamiltonian2]:
    """Map a method name to a function ``params -> EffectiveHamiltonian2``."""
    if callable(method):
        return method
    if method == "rough":
        return rough_effective
    if method == "shifted":
        return lambda p: shifted_rough_effective(p, eta)
    if method == "green":
        from .resolvent import green_effective

        return lambda p: green_effective(p, e0)
    raise ValueError(f"unknown effective method {method!r}")


def _max_error(params, make_h, initial, times):
    ref = exact.propagate_exact(exact.decompose(params, initial), times)
    eff = propagate_effective(make_h(params), initial, times)
    return compare_trajectories(ref, eff).max_amplitude_error


def scaling_study(
    base: LambdaParams,
    scale_factors: Sequence[float],
    method="rough",
    *,
    eta: float = 0.0,
    e0: float = 0.0,
    initial: State3 = REFERENCE_INITIAL,
    t_max_delta: float = 200.0,
    n_samples: int = 2001,
) -> ScalingFit:
    """Fit the order of the effective-vs-exact error in ``eps``.

    Each factor multiplies ``delta, Omega_a, Omega_b`` with ``Delta`` held
    fixed, so ``eps`` scales with it; the time window ``[0, t_max_delta/|Delta|]``
    is the same for every point.

    Raises
    ------
    ValueError
        Fewer than three factors, or a factor outside ``(0, 1]``.
    DegeneracyError
        Some error is below ``RESIDUAL_FLOOR`` (nothing but roundoff to fit).
    """
    factors = np.asarray(scale_factors, dtype=float)
    if factors.size < 3:
        raise ValueError("a scaling fit needs at least three points")
    if np.any(factors <= 0) or np.any(factors > 1):
        raise ValueError("scale factors must lie in (0, 1]")
    if np.unique(factors).size != factors.size:
        raise ValueError("scale factors must be distinct")
    make_h = effective_method(method, eta, e0)
    times = np.linspace(0.0, t_max_delta / abs(base.big_delta), n_samples)
    eps, errs = [], []
    for f in factors:
        p = base.scaled(f)
        eps.append(reduce(p).epsilon)
        errs.append(_max_error(p, make_h, initial, times))
    eps, errs = np.array(eps), np.array(errs)
    if np.any(errs < RESIDUAL_FLOOR):
        raise DegeneracyError("error at roundoff level at some scale: the fit is degenerate")
    (slope, intercept), res, *_ = np.polyfit(np.log(eps), np.log(errs), 1, full=True)
    name = method if isinstance(method, str) else getattr(method, "__name__", "custom")
    return ScalingFit(eps, errs, float(slope), float(intercept), float(res[0]) if res.size else 0.0, name)


# --- ratio tests and the expansion table -------------------------------------


@dataclass(frozen=True)
class RatioTest:
    """Outcome of a halving test for a claimed ``O(eps^order)`` quantity.

    ``mode="window"`` requires every ratio within ``expected * (1 +- rel_tol)``;
    ``mode="at_least"`` only requires ``ratio >= expected * (1 - rel_tol)``
    (order ``order`` or better). Residual pairs already below `floor` pass.
    """

    epsilons: np.ndarray
    residuals: np.ndarray
    order: int
    ratios: np.ndarray
    expected: np.ndarray
    passed: bool
    mode: str


def ratio_test(epsilons, residuals, order: int, rel_tol: float = 0.25, mode: str = "window", floor: float = RESIDUAL_FLOOR) -> RatioTest:
    eps = np.asarray(epsilons, dtype=float)
    res = np.abs(np.asarray(residuals, dtype=float))
    if eps.size < 2 or eps.shape != res.shape:
        raise ValueError("need matching epsilon/residual sequences of length >= 2")
    if mode not in ("window", "at_least"):
        raise ValueError(f"unknown ratio-test mode {mode!r}")
    expected = (eps[:-1] / eps[1:]) ** order
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = res[:-1] / res[1:]
    ok = []
    for r, ex, lo_res in zip(ratios, expected, res[1:]):
        if lo_res < floor:
            ok.append(True)
        elif mode == "window":
            ok.append(abs(r / ex - 1) <= rel_tol)
        else:
            ok.append(r >= ex * (1 - rel_tol))
    return RatioTest(eps, res, order, ratios, expected, bool(all(ok)), mode)


@dataclass(frozen=True)
class ExpansionResidual:
    """One row of the expansion table.

    `order` is the claimed order of the residual (``None`` for entries that
    are exact, which must vanish to roundoff).
    """

    quantity: str
    branch: str
    predicted: complex
    computed: complex
    order: int | None

    @property
    def residual(self) -> float:
        return abs(self.computed - self.predicted)


def _table_predictions(red, a0, b0):
    la, lb, lam, e = red.lambda_a, red.lambda_b, red.lam, red.epsilon
    cla, clb = np.conj(la), np.conj(lb)
    if red.dark_branch:
        w = red.coupling_weight
        c_bright = (la * a0 + lb * b0) * e
        return "lambda=0", {
            "x1": (0.0, 2),
            "x2": (0.0, None),
            "x3": (1.0, 2),
            "A1": ((a0 * abs(la) ** 2 + b0 * cla * lb) / w, 2),
            "A2": ((a0 * abs(lb) ** 2 - cla * lb * b0) / w, 2),
            "A3": (0.0, 2),
            "B1": ((a0 * la * clb + b0 * abs(lb) ** 2) / w, 2),
            "B2": ((-la * clb * a0 + abs(la) ** 2 * b0) / w, 2),
            "B3": (0.0, 2),
            "C1": (-c_bright, 2),
            "C2": (0.0, None),
            "C3": (c_bright, 2),
        }
    g = e / (2 * lam)
    return "lambda!=0", {
        "x1": (-lam * e, 2),
        "x2": (lam * e, 2),
        "x3": (1.0, 2),
        "A1": (a0 + b0 * cla * lb * g, 2),
        "A2": (-b0 * cla * lb * g, 2),
        "A3": (0.0, 2),
        "B1": (a0 * la * clb * g, 2),
        "B2": (b0 - a0 * la * clb * g, 2),
        "B3": (0.0, 2),
        "C1": (-la * a0 * e, 2),
        "C2": (-lb * b0 * e, 2),
        "C3": ((la * a0 + lb * b0) * e, 2),
    }


def expansion_check(params: LambdaParams, initial: State3 = REFERENCE_INITIAL) -> list[ExpansionResidual]:
    """Compare the exact roots and mode amplitudes with their leading-order
    expansions in ``eps``.

    The expansions assume ``delta / Delta >= 0``. Otherwise the labels
    ``a`` and ``b`` are exchanged (amplitudes, couplings and ``A <-> B``)
    before comparing, which maps the problem onto that case.
    """
    red = reduce(params)
    decomp = exact.decompose(params, initial)
    a0, b0 = initial.alpha, initial.beta
    A, B, C = decomp.A, decomp.B, decomp.C
    if red.sign < 0:
        red = red.swapped()
        a0, b0 = b0, a0
        A, B = B, A
    branch, table = _table_predictions(red, a0, b0)
    computed = {f"x{k + 1}": decomp.roots[k] for k in range(3)}
    for name, arr in (("A", A), ("B", B), ("C", C)):
        computed.update({f"{name}{k + 1}": arr[k] for k in range(3)})
    return [
        ExpansionResidual(q, branch, complex(pred), complex(computed[q]), order)
        for q, (pred, order) in table.items()
    ]


@dataclass(frozen=True)
class ExpansionStudy:
    epsilons: np.ndarray
    rows: dict = field(default_factory=dict)  # quantity -> (order, residuals, RatioTest | None)
    branch: str = ""

    @property
    def passed(self) -> bool:
        return all(rt.passed if rt is not None else np.all(res <= 1e-12) for _, res, rt in self.rows.values())


def expansion_study(
    params: LambdaParams,
    initial: State3 = REFERENCE_INITIAL,
    scale_factors: Sequence[float] = (1.0, 0.5, 0.25),
    mode: str = "at_least",
    rel_tol: float = 0.25,
) -> ExpansionStudy:
    """Run :func:`expansion_check` along a halving sequence and ratio-test
    every tabulated residual against its claimed order."""
    checks = [expansion_check(params.scaled(f), initial) for f in scale_factors]
    eps = np.array([reduce(params.scaled(f)).epsilon for f in scale_factors])
    rows = {}
    for i, row in enumerate(checks[0]):
        res = np.array([c[i].residual for c in checks])
        rt = None if row.order is None else ratio_test(eps, res, row.order, rel_tol, mode)
        rows[row.quantity] = (row.order, res, rt)
    return ExpansionStudy(eps, rows, checks[0][0].branch)
