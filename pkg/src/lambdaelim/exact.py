"""Exact solution of the three-level problem.

The amplitudes are finite sums of modes,

    alpha(t) = sum_k A_k exp(-i Delta x_k t)   (same for beta/B_k, gamma/C_k),

where ``Delta x_k`` are the eigenvalues of the rotating-frame Hamiltonian.
The spectrum comes from a Hermitian eigensolver; the characteristic cubic is
kept as a cross-check only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import LambdaParams, ReducedParams, State3, Trajectory

__all__ = [
    "build_hamiltonian",
    "characteristic_polynomial",
    "characteristic_roots",
    "companion_roots",
    "eigenfrequencies",
    "ModeDecomposition",
    "decompose",
    "propagate_exact",
    "exact_propagator",
]


def build_hamiltonian(params: LambdaParams) -> np.ndarray:
    """Rotating-frame Hamiltonian on ``(|a>, |b>, |e>)`` with hbar = 1."""
    p = params
    return np.array(
        [
            [-p.delta / 2, 0.0, np.conj(p.omega_a) / 2],
            [0.0, p.delta / 2, np.conj(p.omega_b) / 2],
            [p.omega_a / 2, p.omega_b / 2, p.big_delta],
        ],
        dtype=complex,
    )


def _order_roots(x):
    """Permutation putting the root nearest 1 last, the others ascending."""
    x = np.asarray(x)
    k3 = int(np.argmin(np.abs(x - 1.0)))
    rest = sorted((i for i in range(3) if i != k3), key=lambda i: (x[i], i))
    return np.array(rest + [k3])


def _spectrum(h):
    # h is dimensionless (units of big_delta)
    w, v = np.linalg.eigh(h)
    order = _order_roots(w)
    return w[order], v[:, order]


def characteristic_polynomial(red: ReducedParams) -> np.ndarray:
    """Coefficients (highest power first) of the cubic whose roots are ``x_k``.

    ``x^3 - x^2 - (lam^2 + |la|^2 + |lb|^2) eps^2 x
    + lam^2 eps^2 + lam eps^3 (|la|^2 - |lb|^2)``, with the signed reduced
    detuning in place of ``lam``.
    """
    e, s = red.epsilon, red.signed_lam
    wa, wb = abs(red.lambda_a) ** 2, abs(red.lambda_b) ** 2
    return np.array(
        [1.0, -1.0, -(s * s + wa + wb) * e * e, s * s * e * e + s * e**3 * (wa - wb)]
    )


def characteristic_roots(red: ReducedParams) -> np.ndarray:
    """The three real roots ``(x1, x2, x3)``.

    ``x3`` is the root closest to 1; ``x1 <= x2`` are the remaining two, so
    that ``x1 ~ -lam eps`` and ``x2 ~ +lam eps`` for ``delta / Delta > 0``.
    """
    return _spectrum(red.hamiltonian())[0]


def eigenfrequencies(params: LambdaParams) -> np.ndarray:
    """Ordered roots ``x_k`` straight from physical parameters.

    Unlike :func:`characteristic_roots` this also accepts zero coupling.
    """
    return _spectrum(build_hamiltonian(params) / params.big_delta)[0]


def companion_roots(red: ReducedParams, imag_tol: float = 1e-13) -> np.ndarray:
    """Roots of :func:`characteristic_polynomial` via its companion matrix,
    in the same order as :func:`characteristic_roots`."""
    r = np.roots(characteristic_polynomial(red))
    if np.max(np.abs(r.imag)) > imag_tol:
        raise ArithmeticError(f"characteristic cubic returned complex roots {r}")
    r = r.real
    return r[_order_roots(r)]


@dataclass(frozen=True)
class ModeDecomposition:
    """Modes of the exact solution.

    Attributes
    ----------
    roots : (3,) ndarray
        Dimensionless eigenfrequencies ``x_k`` (energies ``big_delta * x_k``).
    coefficients : (3, 3) complex ndarray
        Row ``j`` holds the mode amplitudes of component ``j``: ``A_k``,
        ``B_k`` and ``C_k`` for rows 0, 1, 2.
    eigenvectors : (3, 3) complex ndarray
        Column ``k`` is the normalized eigenvector of root ``k``.
    big_delta : float
    """

    roots: np.ndarray
    coefficients: np.ndarray
    eigenvectors: np.ndarray
    big_delta: float

    @property
    def A(self) -> np.ndarray:
        return self.coefficients[0]

    @property
    def B(self) -> np.ndarray:
        return self.coefficients[1]

    @property
    def C(self) -> np.ndarray:
        return self.coefficients[2]

    @property
    def energies(self) -> np.ndarray:
        return self.big_delta * self.roots

    def phases(self, times) -> np.ndarray:
        """``exp(-i Delta x_k t)`` with shape ``(len(times), 3)``."""
        t = np.atleast_1d(np.asarray(times, dtype=float))
        return np.exp(-1j * np.outer(t, self.energies))


def decompose(params: LambdaParams, initial: State3) -> ModeDecomposition:
    """Expand `initial` on the eigenmodes of the Hamiltonian.

    Coincident eigenvalues are harmless: the eigensolver returns an
    orthonormal basis of the degenerate subspace and the mode sums still
    reproduce the initial state.
    """
    d = params.big_delta
    x, vecs = _spectrum(build_hamiltonian(params) / d)
    proj = vecs.conj().T @ initial.to_array()
    coeffs = vecs * proj[np.newaxis, :]
    return ModeDecomposition(roots=x, coefficients=coeffs, eigenvectors=vecs, big_delta=d)


def propagate_exact(decomp: ModeDecomposition, times) -> Trajectory:
    """Evaluate the mode sums at each time in `times`."""
    t = np.asarray(times, dtype=float)
    if not np.all(np.isfinite(t)):
        raise ValueError("times must be finite")
    amps = decomp.phases(t) @ decomp.coefficients.T
    return Trajectory(np.atleast_1d(t), amps, label="exact")


def exact_propagator(params: LambdaParams, times) -> np.ndarray:
    """Full 3x3 evolution operator ``exp(-i H t)``.

    Returns shape ``(3, 3)`` for scalar `times`, ``(N, 3, 3)`` otherwise.
    """
    t = np.asarray(times, dtype=float)
    w, v = np.linalg.eigh(build_hamiltonian(params))
    ph = np.exp(-1j * np.multiply.outer(t, w))
    return np.einsum("ik,...k,jk->...ij", v, ph, v.conj())
