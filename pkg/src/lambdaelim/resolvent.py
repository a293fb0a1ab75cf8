"""Projected resolvent of the lambda system and the pole approximation.

With ``P`` the projector on ``{|a>, |b>}`` and ``Q = |e><e|``,

    P G(z) P = P / M(z),   M(z) = z - P H0 P - P R(z) P,

where ``R(z) = V + V Q (z - Q H0 Q - Q V Q)^-1 Q V`` is the displacement
operator. The projected evolution operator is the sum of the residues of
``exp(-i z t) P / M(z)``, taken here in closed form as
``adj M(z_k) / det'M(z_k)`` at each simple pole (no contour quadrature).
Keeping only the two poles near the lower levels, i.e. freezing ``R`` at the
ground-state midpoint energy, is the pole approximation.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import exact
from .core import (
    DegeneracyError,
    LambdaParams,
    RegimeError,
    RegimeWarning,
    reduce,
)
from .elim import EffectiveHamiltonian2

__all__ = [
    "DegeneratePoleError",
    "ProjectedResolvent",
    "ResidueSet",
    "displacement_operator",
    "resolvent_poles",
    "residues",
    "leading_order_residues",
    "projected_propagator",
    "green_effective",
    "PoleApproxResolvent",
    "pole_approx_resolvent",
]

#: Relative pole separation (in units of |Delta|) below which residues are refused.
POLE_SEPARATION = 1e-10


class DegeneratePoleError(DegeneracyError):
    """Two poles of ``P/M(z)`` coincide numerically."""


def _partition(params: LambdaParams, origin_shift: float = 0.0):
    h = exact.build_hamiltonian(params) + origin_shift * np.eye(3)
    h0 = np.diag(np.diag(h))
    return h0, h - h0


def _adj2(m):
    out = np.empty_like(m)
    out[..., 0, 0] = m[..., 1, 1]
    out[..., 1, 1] = m[..., 0, 0]
    out[..., 0, 1] = -m[..., 0, 1]
    out[..., 1, 0] = -m[..., 1, 0]
    return out


def _det2(m):
    return m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]


def displacement_operator(params: LambdaParams, z: complex, origin_shift: float = 0.0) -> np.ndarray:
    """``P R(z) P`` as a 2x2 matrix.

    Built from the generic projector formula; for the lambda system
    ``PVP = QVQ = 0`` and it reduces to
    ``(1/4) / (z - Delta) [[|Oa|^2, Oa* Ob], [Oa Ob*, |Ob|^2]]``.

    `origin_shift` moves every level by the same energy, which moves the
    pole of ``R`` to ``Delta + origin_shift``.

    Raises
    ------
    RegimeError
        If `z` sits on the pole of ``R``.
    """
    h0, v = _partition(params, origin_shift)
    qq = z - h0[2, 2] - v[2, 2]
    if abs(qq) <= 4 * np.finfo(float).eps * max(abs(params.big_delta), abs(z)):
        raise RegimeError(f"z = {z} is the pole of the displacement operator")
    pv = v[:2, 2:]
    return v[:2, :2] + (pv @ v[2:, :2]) / qq


@dataclass(frozen=True)
class ProjectedResolvent:
    """``M(z)`` such that ``P G(z) P = P / M(z)``.

    Parameters
    ----------
    params : LambdaParams
    origin_shift : float
        Global energy shift ``E0`` (midpoint of the lower levels). Shifting
        translates the whole function: ``M_E0(z) = M_0(z - E0)``.
    """

    params: LambdaParams
    origin_shift: float = 0.0

    def __call__(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        h0, _ = _partition(self.params, self.origin_shift)
        m = np.multiply.outer(z, np.eye(2)) - h0[:2, :2]
        if z.ndim == 0:
            return m - displacement_operator(self.params, complex(z), self.origin_shift)
        for idx in np.ndindex(z.shape):
            m[idx] -= displacement_operator(self.params, complex(z[idx]), self.origin_shift)
        return m

    @property
    def pole_of_r(self) -> float:
        return self.params.big_delta + self.origin_shift

    def coupling_matrix(self) -> np.ndarray:
        """``K = [[|la|^2, la* lb], [la lb*, |lb|^2]]`` (Hermitian, rank <= 1)."""
        red = reduce(self.params)
        la, lb = red.lambda_a, red.lambda_b
        return np.array(
            [[abs(la) ** 2, np.conj(la) * lb], [la * np.conj(lb), abs(lb) ** 2]]
        )

    def det(self, z):
        return _det2(self(z))

    def det_derivative(self, z):
        """``d det M / dz`` by Jacobi's formula, ``tr(adj M  dM/dz)``.

        ``dM/dz = 1 + P R(z) P / (z - Delta - E0)`` because ``R`` is a simple
        pole in ``z``.
        """
        z = complex(z)
        m = self(z)
        r = displacement_operator(self.params, z, self.origin_shift)
        dm = np.eye(2) + r / (z - self.pole_of_r)
        return np.trace(_adj2(m) @ dm)

    def det_polynomial(self) -> np.ndarray:
        """Coefficients of ``det M(Delta x) (x - 1) / Delta^2`` in ``x``
        (highest first), for zero origin shift.

        It is the characteristic cubic of the full Hamiltonian.
        """
        d = self.params.big_delta
        r = displacement_operator(self.params, 0.0) * (-d)  # numerator W of R = W/(z - D)
        h0 = np.diag([-self.params.delta / 2, self.params.delta / 2]) / d
        w = r / d**2
        # (x - 1) M(Dx)/D = (x - 1)(x - h0) - w   entrywise polynomials in x
        p = [[None, None], [None, None]]
        for i in range(2):
            for j in range(2):
                diag = np.polymul([1.0, -1.0], [1.0, -h0[i, j]]) if i == j else np.zeros(3)
                p[i][j] = np.polysub(diag, [w[i, j]])
        quartic = np.polysub(np.polymul(p[0][0], p[1][1]), np.polymul(p[0][1], p[1][0]))
        cubic, rem = np.polydiv(quartic, [1.0, -1.0])
        if np.max(np.abs(rem)) > 1e-12 * np.max(np.abs(quartic)):
            raise ArithmeticError("determinant numerator not divisible by (x - 1)")
        return np.real_if_close(cubic, tol=1e6)


@dataclass(frozen=True)
class ResidueSet:
    """Poles of ``P/M(z)`` and the residues of ``exp(-izt) P/M(z)``.

    Attributes
    ----------
    poles : (3,) ndarray
        Real pole energies ``Delta x_k``, ordered like the characteristic roots.
    matrices : (..., 3, 2, 2) complex ndarray
        ``R_k(t)``; leading axes follow the shape of `times`.
    times : ndarray
    """

    poles: np.ndarray
    matrices: np.ndarray
    times: np.ndarray

    def __getitem__(self, k):
        return self.matrices[..., k, :, :]

    def total(self) -> np.ndarray:
        return self.matrices.sum(axis=-3)

    def relevant(self) -> np.ndarray:
        """Sum over the two poles near the lower levels."""
        return self.matrices[..., :2, :, :].sum(axis=-3)


def resolvent_poles(params: LambdaParams) -> np.ndarray:
    """Zeros of ``det M(z)``, i.e. ``Delta * x_k``."""
    return params.big_delta * exact.eigenfrequencies(params)


def residues(params: LambdaParams, t=0.0) -> ResidueSet:
    """Residues ``exp(-i z_k t) adj M(z_k) / det'M(z_k)``.

    A pole where ``det M`` does not vanish (the excited-state pole when both
    Rabi frequencies are zero) carries zero residue.

    Raises
    ------
    DegeneratePoleError
        If two poles are closer than ``1e-10 |Delta|``; use
        :func:`leading_order_residues` for the analytic expansion instead.
    """
    poles = resolvent_poles(params)
    gaps = np.abs(poles[:, None] - poles[None, :])[~np.eye(3, dtype=bool)]
    if np.min(gaps) < POLE_SEPARATION * abs(params.big_delta):
        raise DegeneratePoleError(
            f"coincident poles {poles}; residues at a multiple pole are undefined here, "
            "see leading_order_residues for the analytic branch"
        )
    res = ProjectedResolvent(params)
    static = np.zeros((3, 2, 2), dtype=complex)
    coupled = params.omega_a != 0 or params.omega_b != 0
    for k, z in enumerate(poles):
        if not coupled and np.isclose(z, params.big_delta, rtol=0, atol=1e-15 * abs(z)):
            continue
        static[k] = _adj2(res(z)) / res.det_derivative(z)
    t_arr = np.asarray(t, dtype=float)
    ph = np.exp(-1j * np.multiply.outer(t_arr, poles))
    return ResidueSet(poles, ph[..., :, None, None] * static, t_arr)


def leading_order_residues(params: LambdaParams, t=0.0) -> ResidueSet:
    """First-order expansion of the residues in ``eps``.

    For ``lam != 0`` the first two residues are ``|a><a|`` and ``|b><b|``
    dressed by ``+-(la* lb / 2 lam) eps`` off the diagonal; for ``lam = 0``
    they are the bright- and dark-state projectors. The third residue is
    ``O(eps^2)`` and returned as zero. Exact poles are used in the phases.

    The off-diagonal placement follows the mode amplitudes of the exact
    solution: entry ``(a, b)`` multiplies ``beta0`` in ``alpha(t)``.
    """
    red = reduce(params)
    swap = red.sign < 0
    r = red.swapped() if swap else red
    la, lb, lam, e = r.lambda_a, r.lambda_b, r.lam, r.epsilon
    static = np.zeros((3, 2, 2), dtype=complex)
    if red.dark_branch:
        w = r.coupling_weight
        static[0] = np.array([[abs(la) ** 2, np.conj(la) * lb], [la * np.conj(lb), abs(lb) ** 2]]) / w
        static[1] = np.array([[abs(lb) ** 2, -np.conj(la) * lb], [-la * np.conj(lb), abs(la) ** 2]]) / w
    else:
        c = np.conj(la) * lb * e / (2 * lam)
        static[0] = np.array([[1.0, c], [np.conj(c), 0.0]])
        static[1] = np.array([[0.0, -c], [-np.conj(c), 1.0]])
    if swap:
        static = static[:, ::-1, ::-1]
    poles = resolvent_poles(params)
    t_arr = np.asarray(t, dtype=float)
    ph = np.exp(-1j * np.multiply.outer(t_arr, poles))
    return ResidueSet(poles, ph[..., :, None, None] * static, t_arr)


def projected_propagator(params: LambdaParams, t) -> np.ndarray:
    """``P U(t) P`` as the sum of all three residues."""
    return residues(params, t).total()


def green_effective(params: LambdaParams, e0: float = 0.0, origin_shift: float = 0.0) -> EffectiveHamiltonian2:
    """``H_eff = P H0 P + P R(E0) P``.

    Parameters
    ----------
    e0 : float
        Energy at which the displacement operator is frozen.
    origin_shift : float
        Global energy offset applied to the whole system before projecting.
        ``green_effective(p, s, origin_shift=s)`` equals the unshifted result
        plus ``s`` times the identity.

    Notes
    -----
    The result is only meaningful when ``|e0 - origin_shift|`` is of order
    ``eps |Delta|``; a :class:`RegimeWarning` is emitted otherwise.
    """
    e0 = float(e0)
    try:
        eps = reduce(params).epsilon
    except DegeneracyError:
        eps = 0.0
    if abs(e0 - origin_shift) > abs(params.big_delta) * eps:
        warnings.warn(
            f"E0 = {e0:g} lies {abs(e0 - origin_shift) / abs(params.big_delta):.3g} |Delta| "
            f"from the lower-level midpoint (eps = {eps:.3g}); pole approximation degraded",
            RegimeWarning,
            stacklevel=2,
        )
    h0, _ = _partition(params, origin_shift)
    h = h0[:2, :2] + displacement_operator(params, e0, origin_shift)
    return EffectiveHamiltonian2(0.5 * (h + h.conj().T), "green", e0)


class PoleApproxResolvent:
    """``M0(z) = z - P H0 P - P R(0) P``: the projected resolvent with the
    displacement operator frozen at the lower-level midpoint.

    ``det M0`` is quadratic; its zeros are the eigenvalues of the green
    effective Hamiltonian and approximate the two lower poles of ``M``.
    """

    def __init__(self, params: LambdaParams):
        self.params = params
        h0, _ = _partition(params)
        self._static = h0[:2, :2] + displacement_operator(params, 0.0)

    def __call__(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        return np.multiply.outer(z, np.eye(2)) - self._static

    def det_coefficients(self) -> np.ndarray:
        """``[1, -tr, det]`` of the quadratic ``det M0(z)``."""
        s = self._static
        return np.array([1.0, -np.trace(s).real, _det2(s).real])

    def poles(self) -> np.ndarray:
        """Both zeros of ``det M0``, ascending."""
        s = self._static
        mean = 0.5 * np.trace(s).real
        half_gap = np.hypot(0.5 * (s[0, 0] - s[1, 1]).real, abs(s[0, 1]))
        return np.array([mean - half_gap, mean + half_gap])


def pole_approx_resolvent(params: LambdaParams) -> PoleApproxResolvent:
    return PoleApproxResolvent(params)
