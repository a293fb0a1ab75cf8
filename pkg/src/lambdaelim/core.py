"""Domain types for the driven lambda system and the dimensionless reduction.

Units follow hbar = 1. Frequencies are angular and carried in whatever unit
the caller picks; ``big_delta * t`` is the natural dimensionless time.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "LambdaElimError",
    "ConfigError",
    "RegimeError",
    "DegeneracyError",
    "RegimeWarning",
    "LambdaParams",
    "ReducedParams",
    "State3",
    "State2",
    "Trajectory",
    "reduce",
    "expand",
    "REFERENCE_PARAMS",
    "REFERENCE_INITIAL",
]

#: Above this epsilon the perturbative expansions are not trusted.
EPSILON_WARN = 0.2


class LambdaElimError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class ConfigError(LambdaElimError, ValueError):
    """Malformed scenario configuration."""

    exit_code = 2


class RegimeError(LambdaElimError, ValueError):
    """Input outside the regime where a construction is defined.

    Raised for a vanishing common detuning, the singular picture
    ``eta = -1`` and evaluation of the displacement operator on its pole.
    """

    exit_code = 3


class DegeneracyError(LambdaElimError, ArithmeticError):
    """Numerically degenerate input (zero coupling, coincident poles, ...)."""

    exit_code = 4


class RegimeWarning(UserWarning):
    """The parameters are valid but outside the far-detuned regime."""


@dataclass(frozen=True)
class LambdaParams:
    """Rotating-frame parameters of the lambda system.

    Parameters
    ----------
    delta : float
        Two-photon detuning, the splitting between ``|b>`` and ``|a>``.
    big_delta : float
        Common (mean) one-photon detuning; must be nonzero.
    omega_a, omega_b : complex
        Rabi frequencies of the ``a-e`` and ``b-e`` transitions.
    delta_a, delta_b : float, optional
        Individual laser detunings. When given they must reproduce
        ``delta = delta_a - delta_b`` and ``big_delta = (delta_a + delta_b)/2``.
    """

    delta: float
    big_delta: float
    omega_a: complex = 0j
    omega_b: complex = 0j
    delta_a: float | None = None
    delta_b: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "delta", float(self.delta))
        object.__setattr__(self, "big_delta", float(self.big_delta))
        object.__setattr__(self, "omega_a", complex(self.omega_a))
        object.__setattr__(self, "omega_b", complex(self.omega_b))
        values = [self.delta, self.big_delta, self.omega_a, self.omega_b]
        if not all(np.isfinite(v) for v in values):
            raise ValueError("lambda-system parameters must be finite")
        if self.big_delta == 0.0:
            raise RegimeError("common detuning big_delta must be nonzero")
        if (self.delta_a is None) != (self.delta_b is None):
            raise ValueError("delta_a and delta_b must be given together")
        if self.delta_a is not None:
            tol = 1e-12 * abs(self.big_delta)
            if abs(self.delta - (self.delta_a - self.delta_b)) > tol:
                raise ValueError("delta != delta_a - delta_b")
            if abs(self.big_delta - 0.5 * (self.delta_a + self.delta_b)) > tol:
                raise ValueError("big_delta != (delta_a + delta_b) / 2")

    @classmethod
    def from_laser_detunings(cls, delta_a, delta_b, omega_a, omega_b):
        """Build from the two individual laser detunings."""
        return cls(
            delta=delta_a - delta_b,
            big_delta=0.5 * (delta_a + delta_b),
            omega_a=omega_a,
            omega_b=omega_b,
            delta_a=delta_a,
            delta_b=delta_b,
        )

    def scaled(self, factor: float) -> "LambdaParams":
        """Multiply ``delta``, ``omega_a`` and ``omega_b`` by `factor`, keeping
        ``big_delta`` fixed (epsilon scales by the same factor)."""
        return LambdaParams(
            self.delta * factor,
            self.big_delta,
            self.omega_a * factor,
            self.omega_b * factor,
        )

    @property
    def epsilon(self) -> float:
        return reduce(self).epsilon


@dataclass(frozen=True)
class ReducedParams:
    """Dimensionless bookkeeping ``lam * eps = |delta| / 2|Delta|``,
    ``lambda_k * eps = Omega_k / 2 Delta``.

    `sign` is the sign of ``delta / big_delta`` (+1 when ``delta == 0``);
    the signed reduced detuning ``sign * lam`` is what enters the
    Hamiltonian.
    """

    epsilon: float
    lam: float
    lambda_a: complex
    lambda_b: complex
    sign: int = 1

    def __post_init__(self):
        if not self.epsilon > 0:
            raise DegeneracyError("epsilon must be positive")
        if self.lam < 0:
            raise ValueError("lam must be non-negative; carry the sign in `sign`")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def signed_lam(self) -> float:
        return self.sign * self.lam

    @property
    def coupling_weight(self) -> float:
        """``|lambda_a|^2 + |lambda_b|^2``."""
        return abs(self.lambda_a) ** 2 + abs(self.lambda_b) ** 2

    @property
    def dark_branch(self) -> bool:
        """True when the reduced detuning is negligible against the couplings
        (``lam < 1e-8 max(|lambda_a|, |lambda_b|)``), where the ``lam = 0``
        expansions apply."""
        return self.lam < 1e-8 * max(abs(self.lambda_a), abs(self.lambda_b))

    def hamiltonian(self) -> np.ndarray:
        """Hamiltonian in units of ``big_delta`` (its eigenvalues are the
        characteristic roots)."""
        e = self.epsilon
        s = self.signed_lam
        la, lb = self.lambda_a, self.lambda_b
        return np.array(
            [
                [-s * e, 0.0, np.conj(la) * e],
                [0.0, s * e, np.conj(lb) * e],
                [la * e, lb * e, 1.0],
            ],
            dtype=complex,
        )

    def swapped(self) -> "ReducedParams":
        """Relabel ``a <-> b``; flips the sign of the reduced detuning."""
        return ReducedParams(self.epsilon, self.lam, self.lambda_b, self.lambda_a, -self.sign)


def reduce(params: LambdaParams) -> ReducedParams:
    """Reduce physical parameters to ``(eps, lam, lambda_a, lambda_b)``.

    The normalization is ``eps = max(|delta|, |Omega_a|, |Omega_b|) / 2|Delta|``
    so that the largest of ``lam, |lambda_a|, |lambda_b|`` equals one.

    Raises
    ------
    DegeneracyError
        If all of ``delta, omega_a, omega_b`` vanish.
    """
    two_d = 2.0 * params.big_delta
    scale = max(abs(params.delta), abs(params.omega_a), abs(params.omega_b))
    if scale == 0.0:
        raise DegeneracyError("zero coupling and zero two-photon detuning: epsilon undefined")
    eps = scale / abs(two_d)
    if eps > EPSILON_WARN:
        warnings.warn(
            f"epsilon = {eps:.3g} > {EPSILON_WARN}; far-detuned expansions are unreliable",
            RegimeWarning,
            stacklevel=2,
        )
    signed = params.delta / (two_d * eps)
    return ReducedParams(
        epsilon=eps,
        lam=abs(signed),
        lambda_a=params.omega_a / (two_d * eps),
        lambda_b=params.omega_b / (two_d * eps),
        sign=-1 if signed < 0 else 1,
    )


def expand(red: ReducedParams, big_delta: float) -> LambdaParams:
    """Inverse of :func:`reduce` for a given common detuning."""
    two_d = 2.0 * big_delta
    return LambdaParams(
        delta=two_d * red.signed_lam * red.epsilon,
        big_delta=big_delta,
        omega_a=two_d * red.lambda_a * red.epsilon,
        omega_b=two_d * red.lambda_b * red.epsilon,
    )


def _normalized(amps, size, tol):
    amps = np.asarray(amps, dtype=complex)
    if amps.shape != (size,):
        raise ValueError(f"expected {size} amplitudes, got shape {amps.shape}")
    norm = float(np.sum(np.abs(amps) ** 2))
    if abs(norm - 1.0) > tol:
        raise ValueError(f"state is not normalized (norm = {norm!r})")
    return amps


@dataclass(frozen=True)
class State3:
    """Amplitudes ``(alpha, beta, gamma)`` on ``|a>, |b>, |e>``."""

    alpha: complex
    beta: complex
    gamma: complex = 0j
    tol: float = field(default=1e-9, repr=False, compare=False)

    def __post_init__(self):
        _normalized([self.alpha, self.beta, self.gamma], 3, self.tol)

    def to_array(self) -> np.ndarray:
        return np.array([self.alpha, self.beta, self.gamma], dtype=complex)

    @property
    def lower(self) -> "State2":
        """Projection on ``span{|a>, |b>}`` (requires ``gamma == 0``)."""
        return State2(self.alpha, self.beta, tol=self.tol)


@dataclass(frozen=True)
class State2:
    """Amplitudes ``(alpha, beta)`` of the two lower states."""

    alpha: complex
    beta: complex
    tol: float = field(default=1e-9, repr=False, compare=False)

    def __post_init__(self):
        _normalized([self.alpha, self.beta], 2, self.tol)

    def to_array(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=complex)


@dataclass(frozen=True)
class Trajectory:
    """Amplitudes sampled on a time grid.

    Attributes
    ----------
    times : (N,) ndarray
        Sample times.
    amplitudes : (N, 3) or (N, 2) complex ndarray
        ``(alpha, beta[, gamma])`` at each sample.
    label : str
        Free-form provenance tag (``"exact"``, ``"rough"``, ...).
    """

    times: np.ndarray
    amplitudes: np.ndarray
    label: str = ""

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 2 or amps.shape[0] != times.shape[0] or amps.shape[1] not in (2, 3):
            raise ValueError(f"amplitudes shape {amps.shape} incompatible with {times.shape[0]} samples")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def alpha(self) -> np.ndarray:
        return self.amplitudes[:, 0]

    @property
    def beta(self) -> np.ndarray:
        return self.amplitudes[:, 1]

    @property
    def gamma(self) -> np.ndarray:
        if self.amplitudes.shape[1] < 3:
            raise AttributeError("two-level trajectory has no excited amplitude")
        return self.amplitudes[:, 2]

    @property
    def populations(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    @property
    def norm(self) -> np.ndarray:
        return self.populations.sum(axis=1)

    @property
    def max_norm_error(self) -> float:
        return float(np.max(np.abs(self.norm - 1.0)))


# Scenario of the reference figures, in units where big_delta = 1.
REFERENCE_PARAMS = LambdaParams(
    delta=0.1,
    big_delta=1.0,
    omega_a=0.1 * np.exp(-1j * np.pi / 3),
    omega_b=0.1 * np.exp(-1j * np.pi / 2),
)
REFERENCE_INITIAL = State3(np.sqrt(1 / 3), np.sqrt(2 / 3), 0.0)
