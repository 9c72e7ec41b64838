"""Far-field directivity from solved Wiener-Hopf problems.

Steepest descent gives, for the upper half-space ``0 <= theta <= pi``,

    D(theta) = sqrt(k) e^{-i pi/4} / sqrt(2 pi) * A(alpha_s) sin(theta),

with the stationary point ``alpha_s = -k cos(theta)`` (``+k cos(theta)``
for Hurd's transform convention). The lower half-space uses ``B(alpha_s)``
in place of ``A``.
"""

from dataclasses import dataclass, field

import numpy as np

from .diffraction import PhysicalParams, beta_eval, gamma_eval
from .errors import ContourError

SHADOW_WINDOW = 0.1
_BRANCH_STEP = 1e-3


def reconstruct_A_B(sol, alpha):
    """Spectral amplitudes ``(A, B)`` for a solved catalogue problem.

    Parameters
    ----------
    sol : RHSolution or SeniorScalarSolution
    alpha : array_like
        Points where the amplitudes are needed.
    """
    name = sol.name
    if name not in ("sommerfeld", "senior-matrix", "senior-scalar", "hurd"):
        raise ValueError(f"no amplitude reconstruction for problem {name!r}")
    alpha = np.atleast_1d(np.asarray(alpha, dtype=complex))
    plus, minus = sol.sectional(alpha)
    k = sol.params.kc
    if name == "sommerfeld":
        A = minus[0]
        B = -A
    elif name in ("senior-matrix", "senior-scalar"):
        g = gamma_eval(k, alpha)
        A = -(plus[0] + minus[0]) / g
        B = (plus[1] + minus[0]) / g
    else:
        b = beta_eval(k, alpha)
        A = 0.5 * (minus[0] + minus[1] / b)
        B = 0.5 * (-minus[0] + minus[1] / b)
    return A, B


def stationary_point(name: str, k, theta):
    sign = 1.0 if name == "hurd" else -1.0
    return sign * k * np.cos(theta)


def shadow_flags(theta0: float, thetas, window: float = SHADOW_WINDOW):
    """True where the stationary point is within ``window`` of the incident pole."""
    return np.abs(np.cos(thetas) + np.cos(theta0)) < window


@dataclass
class DirectivityCurve:
    thetas: np.ndarray
    values: np.ndarray
    flags: np.ndarray
    problem: str
    params: PhysicalParams
    shadow_angles: tuple = field(default=())

    @property
    def magnitude(self) -> np.ndarray:
        return np.abs(self.values)


def _raw_directivity(sol, thetas):
    k = sol.params.kc
    alpha = stationary_point(sol.name, k, thetas)
    A, B = reconstruct_A_B(sol, alpha)
    upper = np.mod(thetas, 2 * np.pi) <= np.pi
    amp = np.where(upper, A, B)
    return np.sqrt(k) * np.exp(-1j * np.pi / 4) / np.sqrt(2 * np.pi) * amp * np.sin(thetas)


def _branch_limit(sol, thetas):
    # one-sided cubic extrapolation; the side is the one facing theta = pi
    step = np.where(thetas < np.pi, _BRANCH_STEP, -_BRANCH_STEP)
    d1, d2, d3 = (_raw_directivity(sol, thetas + j * step) for j in (1, 2, 3))
    return 3 * d1 - 3 * d2 + d3


def directivity(sol, thetas, window: float = SHADOW_WINDOW) -> DirectivityCurve:
    """Directivity samples on ``thetas`` with shadow-boundary flags.

    Flagged samples are NaN. Where ``sin(theta) = 0`` the stationary point is
    a branch point and the value is extrapolated from the side facing
    ``theta = pi``, so 0 and 2 pi give the two faces of the screen.
    """
    thetas = np.asarray(thetas, dtype=float)
    flags = shadow_flags(sol.params.theta0, thetas, window)
    values = np.full(thetas.shape, np.nan + 0j)
    ok = ~flags
    at_branch = ok & (np.abs(np.sin(thetas)) < 1e-8)
    regular = ok & ~at_branch
    if regular.any():
        values[regular] = _raw_directivity(sol, thetas[regular])
    if at_branch.any():
        values[at_branch] = _branch_limit(sol, thetas[at_branch])
    t0 = sol.params.theta0
    shadows = tuple(sorted({float(np.mod(np.pi - t0, 2 * np.pi)), float(np.mod(np.pi + t0, 2 * np.pi))}))
    return DirectivityCurve(thetas, values, flags, sol.name, sol.params, shadows)


def sommerfeld_directivity_exact(params: PhysicalParams, theta):
    """Exact hard-hard directivity.

    >>> p = PhysicalParams(theta0=np.pi / 5)
    >>> round(float(abs(sommerfeld_directivity_exact(p, np.pi / 2))), 5)
    0.2155
    """
    k = params.k
    theta = np.asarray(theta, dtype=float)
    den = np.cos(theta) + np.cos(params.theta0)
    if np.any(den == 0):
        raise ContourError("exact directivity has a pole on the shadow boundary")
    out = (
        -np.sqrt(2 / (k * np.pi))
        * np.exp(-1j * np.pi / 4)
        * np.sin(theta / 2)
        * np.sin(params.theta0 / 2)
        / den
    )
    return out if out.ndim else out[()]


def bowman_directivity(params: PhysicalParams, theta, psi=None):
    """Far-field amplitude from Bowman's closed form (optional).

    ``psi`` must be supplied by the caller as a vectorized callable; the
    function is not defined here.
    """
    if psi is None:
        raise NotImplementedError("Bowman's psi function is not provided; pass psi=callable")
    k, t0 = params.k, params.theta0
    theta = np.asarray(theta, dtype=float)
    s = np.sin(theta / 2)
    c = np.cos(t0 / 2)
    if np.any(s == c) or np.any(s == -c):
        raise ContourError("Bowman far field has a pole at sin(theta/2) = +-cos(theta0/2)")
    U = np.sin(t0 / 2) / psi(np.pi - t0) * (psi(-theta) / (s + c) + psi(2 * np.pi - theta) / (s - c))
    return np.sqrt(2 / (k * np.pi)) * np.exp(-1j * np.pi / 4) * U / 4j
