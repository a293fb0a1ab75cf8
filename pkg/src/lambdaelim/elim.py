"""Elimination of the excited state and effective two-level dynamics.

Three routes produce an :class:`EffectiveHamiltonian2`:

* ``rough_effective``: set ``d gamma/dt = 0`` in the natural picture;
* ``shifted_rough_effective``: the same Ansatz in a picture whose energy
  origin is moved by ``eta * Delta``, which rescales every second-order term
  by ``1 / (1 + eta)``;
* ``resolvent.green_effective``: the pole approximation (other module).

The rigorous relevant-part elimination gives the same excited amplitude as
the natural-picture Ansatz, so both share :func:`_adiabatic_gamma_weights`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import LambdaParams, RegimeError, State2, Trajectory
from .exact import ModeDecomposition

__all__ = [
    "EffectiveHamiltonian2",
    "rough_effective",
    "shifted_rough_effective",
    "gamma_relevant",
    "gamma_relevant_exact",
    "propagate_effective",
]


@dataclass(frozen=True)
class EffectiveHamiltonian2:
    """2x2 Hamiltonian on ``span{|a>, |b>}`` together with how it was made.

    Attributes
    ----------
    matrix : (2, 2) complex ndarray
    provenance : {"rough", "shifted", "green"}
    parameter : float or None
        ``eta`` for ``"shifted"``, ``E0`` for ``"green"``.
    """

    matrix: np.ndarray
    provenance: str
    parameter: float | None = None

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError("effective Hamiltonian must be 2x2")
        scale = max(np.max(np.abs(m)), np.finfo(float).tiny)
        if np.max(np.abs(m - m.conj().T)) > 1e-14 * scale:
            raise ValueError("effective Hamiltonian is not Hermitian")
        object.__setattr__(self, "matrix", m)

    @property
    def label(self) -> str:
        if self.parameter is None:
            return self.provenance
        return f"{self.provenance}({self.parameter:g})"

    @property
    def raman_coupling(self) -> complex:
        """Two-photon coupling ``Omega_R``, defined by ``H[b, a] = -Omega_R / 2``."""
        return complex(-2.0 * self.matrix[1, 0])

    @property
    def raman_phase(self) -> float:
        return float(np.angle(self.raman_coupling))

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


def _adiabatic_gamma_weights(params: LambdaParams, eta: float = 0.0):
    """Weights ``(c_a, c_b)`` of ``gamma = c_a alpha + c_b beta`` obtained by
    zeroing ``d gamma/dt`` in the picture shifted by ``eta * Delta``."""
    if eta == -1.0:
        raise RegimeError("eta = -1 puts the excited level at zero energy; Ansatz undefined")
    d = params.big_delta * (1.0 + eta)
    return -params.omega_a / (2 * d), -params.omega_b / (2 * d)


def _eliminate(params: LambdaParams, eta: float) -> np.ndarray:
    # equations of motion for (alpha, beta) in the shifted picture, with gamma substituted
    shift = eta * params.big_delta
    ca, cb = _adiabatic_gamma_weights(params, eta)
    bare = np.diag([shift - params.delta / 2, shift + params.delta / 2]).astype(complex)
    drive = 0.5 * np.array([np.conj(params.omega_a), np.conj(params.omega_b)])
    h_shifted = bare + np.outer(drive, [ca, cb])
    h = h_shifted - shift * np.eye(2)
    # the product above is Hermitian analytically; remove rounding asymmetry
    return 0.5 * (h + h.conj().T)


def rough_effective(params: LambdaParams) -> EffectiveHamiltonian2:
    """Effective Hamiltonian from the ``d gamma/dt = 0`` Ansatz.

    Entries: ``-(delta/2 + |Oa|^2/4D)`` and ``delta/2 - |Ob|^2/4D`` on the
    diagonal, ``-Omega_R/2`` below it, ``Omega_R = Oa Ob^* / 2D``.
    """
    return EffectiveHamiltonian2(_eliminate(params, 0.0), "rough")


def shifted_rough_effective(params: LambdaParams, eta: float) -> EffectiveHamiltonian2:
    """The same Ansatz applied after shifting the energy origin by
    ``eta * Delta``, expressed back in the natural picture.

    Light shifts and Raman coupling come out divided by ``1 + eta``; only
    ``|eta| = O(eps)`` gives the physical result.
    """
    eta = float(eta)
    if not np.isfinite(eta):
        raise ValueError("eta must be finite")
    return EffectiveHamiltonian2(_eliminate(params, eta), "shifted", eta)


def gamma_relevant(params: LambdaParams, s) -> complex | np.ndarray:
    """Leading-order relevant part of the excited amplitude,
    ``-(Oa/2D) alpha - (Ob/2D) beta``.

    `s` is a :class:`State2` or an array whose last axis holds
    ``(alpha, beta)``; the latter is evaluated elementwise.
    """
    ca, cb = _adiabatic_gamma_weights(params, 0.0)
    if isinstance(s, State2):
        return ca * s.alpha + cb * s.beta
    s = np.asarray(s, dtype=complex)
    return ca * s[..., 0] + cb * s[..., 1]


def gamma_relevant_exact(decomp: ModeDecomposition, t, eta: float = 0.0):
    """Slow part of the exact excited amplitude, ``sum_{k=1,2} C_k e^{-i x_k Delta t}``.

    With ``eta != 0`` the value in the picture shifted by ``eta * Delta`` is
    returned, i.e. the natural one times ``exp(-i eta Delta t)``.
    """
    t_arr = np.asarray(t, dtype=float)
    freq = decomp.big_delta * (decomp.roots[:2] + eta)
    val = np.exp(-1j * np.multiply.outer(t_arr, freq)) @ decomp.C[:2]
    return complex(val) if t_arr.ndim == 0 else val


def _su2_propagators(h: np.ndarray, t: np.ndarray) -> np.ndarray:
    # h = h0 I + n . sigma  =>  U = e^{-i h0 t} (cos|n|t I - i sin|n|t (n.sigma)/|n|)
    h0 = 0.5 * (h[0, 0] + h[1, 1]).real
    nz = 0.5 * (h[0, 0] - h[1, 1]).real
    nx = h[0, 1].real
    ny = -h[0, 1].imag
    n = np.sqrt(nx * nx + ny * ny + nz * nz)
    c = np.cos(n * t)
    # sin(n t)/n with the n -> 0 limit t
    s = t * np.sinc(n * t / np.pi)
    ph = np.exp(-1j * h0 * t)
    u = np.empty(t.shape + (2, 2), dtype=complex)
    u[..., 0, 0] = ph * (c - 1j * s * nz)
    u[..., 1, 1] = ph * (c + 1j * s * nz)
    u[..., 0, 1] = ph * (-1j * s * (nx - 1j * ny))
    u[..., 1, 0] = ph * (-1j * s * (nx + 1j * ny))
    return u


def propagate_effective(h: EffectiveHamiltonian2, initial, times) -> Trajectory:
    """Evolve ``(alpha, beta)`` under `h` with the closed-form SU(2) propagator.

    `initial` is a :class:`State2` (or a :class:`~lambdaelim.core.State3`
    with zero excited amplitude, whose lower components are used).
    """
    if hasattr(initial, "lower"):
        initial = initial.lower
    psi0 = initial.to_array()
    t = np.atleast_1d(np.asarray(times, dtype=float))
    amps = _su2_propagators(h.matrix, t) @ psi0
    return Trajectory(t, amps, label=h.label)
