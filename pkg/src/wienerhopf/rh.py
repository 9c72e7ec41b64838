"""Collocation solver for scalar and block Riemann-Hilbert problems.

A problem is the jump relation ``A Phi+ + B Phi- + C = 0`` on the line
``R e^{-i chi}``. The unknown density ``Phi = Phi+ - Phi-`` is represented
by its values at the Chebyshev grid of the map variable x, and the system
``diag(A) C+ + diag(B) C-`` is closed by ``Phi(x = +-1) = 0``.
"""

import dataclasses
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np
from scipy.linalg import LinAlgWarning, lapack, lu_factor, lu_solve

from .cauchy import CauchyPair, assemble_cauchy, contour_transform
from .chebyshev import chebyshev_points, eval_series, values_to_coeffs
from .errors import ContourError, RotationError, SolverError
from .mappings import (
    FOUR_TO_ONE,
    Branch,
    CollocationGrid,
    RationalMap,
    get_map,
    map_derivative,
    map_forward,
    preimages_general,
)

MAX_CONDITION = 1e12
CONTOUR_TOL = 1e-10


class Side(Enum):
    ABOVE = "above"
    BELOW = "below"


def _as_block(value, m: int, npts: int, ndim: int) -> np.ndarray:
    arr = np.asarray(value, dtype=complex)
    shape = (m, m, npts) if ndim == 2 else (m, npts)
    return np.broadcast_to(arr, shape)


@dataclass(frozen=True)
class RHProblem:
    """Jump data for ``A Phi+ + B Phi- + C = 0``.

    The samplers take a 1-D array of (rotated) alpha and return arrays of
    shape ``(m, m, N)`` for A and B and ``(m, N)`` for C. Scalars and
    lower-rank arrays are broadcast.

    ``singularities`` lists ``(label, point)`` pairs the rotation must not
    sweep across. ``plus_labels`` and ``minus_labels`` name the physical
    functions carried by ``Phi+`` and ``Phi-``.
    """

    m: int
    coeff_A: Callable
    coeff_B: Callable
    rhs_C: Callable
    chi: float = np.pi / 4
    rmap: RationalMap = FOUR_TO_ONE
    name: str = "custom"
    params: object = None
    singularities: tuple = ()
    plus_labels: tuple = ()
    minus_labels: tuple = ()
    metadata: dict = field(default_factory=dict, compare=False)

    def replace(self, **changes) -> "RHProblem":
        if "rmap" in changes:
            changes["rmap"] = get_map(changes["rmap"])
        return dataclasses.replace(self, **changes)

    def sample(self, alpha):
        alpha = np.atleast_1d(np.asarray(alpha, dtype=complex))
        N = alpha.size
        A = _as_block(self.coeff_A(alpha), self.m, N, 2)
        B = _as_block(self.coeff_B(alpha), self.m, N, 2)
        C = _as_block(self.rhs_C(alpha), self.m, N, 1)
        return A, B, C


def build_grid(rmap, n: int, chi: float) -> CollocationGrid:
    """Grid, images ``alpha = M(x)`` and rotated images ``alpha e^{-i chi}``."""
    rmap = get_map(rmap)
    if not 0 <= chi < np.pi / 2:
        raise ValueError(f"rotation angle must satisfy 0 <= chi < pi/2, got {chi}")
    x = chebyshev_points(n)
    infinite = np.zeros(n, bool)
    infinite[[0, -1]] = True
    alpha = np.full(n, np.nan + 0j)
    dadx = np.full(n, np.nan + 0j)
    alpha[1:-1] = map_forward(rmap, x[1:-1])
    dadx[1:-1] = map_derivative(rmap, x[1:-1])
    rot = alpha * np.exp(-1j * chi)
    return CollocationGrid(x, alpha, rot, dadx, infinite, float(chi), rmap)


def half_plane_side(alpha, chi: float) -> Side:
    """Which side of the line ``R e^{-i chi}`` a point lies on.

    >>> half_plane_side(1.0, np.pi / 4)
    <Side.ABOVE: 'above'>
    """
    alpha = complex(alpha)
    s = (alpha * np.exp(1j * chi)).imag
    if abs(s) <= CONTOUR_TOL * max(1.0, abs(alpha)):
        raise ContourError(f"alpha={alpha} lies on the rotated contour")
    return Side.ABOVE if s > 0 else Side.BELOW


def check_rotation(problem: RHProblem) -> None:
    """Refuse rotations that sweep the real line across a singularity.

    Rotating R to R e^{-i chi} sweeps the sectors ``-chi < arg < 0`` and
    ``pi - chi < arg < pi``. Singularities on the rotated line itself are
    rejected as well.
    """
    chi = problem.chi
    if not 0 <= chi < np.pi / 2:
        raise RotationError(f"rotation angle chi={chi} outside [0, pi/2)")
    for label, point in problem.singularities:
        point = complex(point)
        if abs(point) <= CONTOUR_TOL:
            raise RotationError(f"{label} at {point} sits at the rotation centre")
        dist = abs((point * np.exp(1j * chi)).imag)
        if dist <= CONTOUR_TOL * max(1.0, abs(point)):
            raise RotationError(f"{label} at {point} lies on the rotated contour")
        arg = np.angle(point)
        if -chi < arg < 0 or np.pi - chi < arg < np.pi:
            raise RotationError(f"rotation by chi={chi:.6g} sweeps across {label} at {point}")


def assemble_system(problem: RHProblem, grid: CollocationGrid, cauchy: CauchyPair):
    """Dense ``mn x mn`` collocation matrix and right-hand side."""
    if cauchy.n != grid.n or cauchy.rmap.kind is not grid.rmap.kind:
        raise ValueError("Cauchy matrices and grid were built for different (map, n)")
    m, n = problem.m, grid.n
    a = grid.alpha_rotated[1:-1]
    A, B, C = problem.sample(a)
    for name, arr in (("A", A), ("B", B), ("C", C)):
        bad = ~np.isfinite(arr).reshape(-1, a.size).all(axis=0)
        if bad.any():
            raise ContourError(f"coefficient {name} is not finite at alpha={a[bad][0]}")
    cp = cauchy.c_plus[1:-1]
    cm = cauchy.c_minus[1:-1]
    M = np.zeros((m * n, m * n), dtype=complex)
    rhs = np.zeros(m * n, dtype=complex)
    for i in range(m):
        rows = slice(i * n + 1, i * n + n - 1)
        for j in range(m):
            cols = slice(j * n, (j + 1) * n)
            M[rows, cols] = A[i, j][:, None] * cp + B[i, j][:, None] * cm
        rhs[rows] = -C[i]
        # decay rows
        M[i * n, i * n] = 1.0
        M[i * n + n - 1, i * n + n - 1] = 1.0
    return M, rhs


def _condition_1norm(M, lu) -> float:
    anorm = np.abs(M).sum(axis=0).max()
    gecon = lapack.get_lapack_funcs("gecon", (lu,))
    rcond, info = gecon(lu, anorm, norm="1")
    if info != 0 or rcond == 0:
        return np.inf
    return 1.0 / rcond


@dataclass(frozen=True)
class RHSolution:
    """Solved density with its Chebyshev series and diagnostics."""

    density_values: np.ndarray
    coeffs: np.ndarray
    cauchy: CauchyPair
    grid: CollocationGrid
    problem: RHProblem
    residual: float
    condition: float

    @property
    def n(self) -> int:
        return self.grid.n

    @property
    def name(self) -> str:
        return self.problem.name

    @property
    def params(self):
        return self.problem.params

    def boundary_values(self):
        """``(plus, minus)`` of shape ``(m, n)``; endpoint entries are 0."""
        plus = self.density_values @ self.cauchy.c_plus.T
        minus = self.density_values @ self.cauchy.c_minus.T
        plus[:, [0, -1]] = 0
        minus[:, [0, -1]] = 0
        return plus, minus

    def tracked(self) -> dict:
        """Boundary values keyed by the physical function names."""
        plus, minus = self.boundary_values()
        labels_p = self.problem.plus_labels or tuple(f"plus{i}" for i in range(self.problem.m))
        labels_m = self.problem.minus_labels or tuple(f"minus{i}" for i in range(self.problem.m))
        out = dict(zip(labels_p, plus))
        out.update(zip(labels_m, minus))
        return out

    def evaluate_offcontour(self, alpha):
        return evaluate_offcontour(self, alpha)

    def sectional(self, alpha):
        return sectional_values(self, alpha)


def solve(problem: RHProblem, n: int) -> RHSolution:
    """Assemble and solve the collocation system at ``n`` points.

    Raises
    ------
    RotationError
        If the rotation crosses a declared singularity.
    SolverError
        If the system is singular or its condition estimate exceeds 1e12.
    """
    if n < 8:
        raise ValueError(f"solve needs n >= 8, got {n}")
    check_rotation(problem)
    grid = build_grid(problem.rmap, n, problem.chi)
    cauchy = assemble_cauchy(problem.rmap, n)
    M, rhs = assemble_system(problem, grid, cauchy)
    with warnings.catch_warnings():
        # exact singularity is reported below as SolverError
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(M, check_finite=True)
    if np.any(np.diag(lu) == 0):
        raise SolverError("collocation matrix is singular", condition=np.inf)
    cond = _condition_1norm(M, lu)
    if cond > MAX_CONDITION:
        raise SolverError(f"condition estimate {cond:.3e} exceeds {MAX_CONDITION:.0e}", condition=cond)
    phi = lu_solve((lu, piv), rhs)
    residual = float(np.abs(M @ phi - rhs).max())
    dens = phi.reshape(problem.m, n)
    return RHSolution(dens, values_to_coeffs(dens), cauchy, grid, problem, residual, cond)


def boundary_values(sol: RHSolution):
    """``(plus, minus)`` boundary values on the grid."""
    return sol.boundary_values()


def defect(sol: RHSolution) -> float:
    """Max over interior points of ``|A Phi+ + B Phi- + C|``."""
    plus, minus = sol.boundary_values()
    A, B, C = sol.problem.sample(sol.grid.alpha_rotated[1:-1])
    p, q = plus[:, 1:-1], minus[:, 1:-1]
    res = np.einsum("ijn,jn->in", A, p) + np.einsum("ijn,jn->in", B, q) + C
    return float(np.abs(res).max())


def evaluate_offcontour(sol: RHSolution, alpha):
    """Cauchy transform of the density at points off the rotated contour.

    Returns ``Phi+`` above the contour and ``Phi-`` below it, shape
    ``(m, N)``.
    """
    alpha = np.atleast_1d(np.asarray(alpha, dtype=complex))
    zeta = alpha * np.exp(1j * sol.grid.chi)
    close = np.abs(zeta.imag) <= CONTOUR_TOL * np.maximum(1.0, np.abs(zeta))
    if close.any():
        raise ContourError(f"alpha={alpha[close][0]} is too close to the contour; use boundary_values")
    return contour_transform(sol.grid.rmap, sol.coeffs, zeta)


def _interval_preimage(rmap, xi: float) -> float:
    if xi == 0:
        return 0.0
    for p in preimages_general(rmap, xi):
        if p.branch is Branch.INTERVAL:
            return p.value.real
    raise ContourError(f"no interval preimage for {xi}")


def sectional_values(sol: RHSolution, alpha):
    """Both ``Phi+`` and ``Phi-`` at arbitrary points.

    The side containing ``alpha`` is taken from the Cauchy transform and the
    other from the jump relation. Points on the contour use boundary values
    interpolated in the map variable.

    Returns
    -------
    plus, minus : ndarray, shape (m, N)
    """
    alpha = np.atleast_1d(np.asarray(alpha, dtype=complex))
    m = sol.problem.m
    plus = np.empty((m, alpha.size), dtype=complex)
    minus = np.empty_like(plus)
    zeta = alpha * np.exp(1j * sol.grid.chi)
    on = np.abs(zeta.imag) <= CONTOUR_TOL * np.maximum(1.0, np.abs(zeta))
    above = ~on & (zeta.imag > 0)
    below = ~on & (zeta.imag < 0)
    if on.any():
        bp, bm = sol.boundary_values()
        cp, cm = values_to_coeffs(bp), values_to_coeffs(bm)
        for idx in np.flatnonzero(on):
            x = _interval_preimage(sol.grid.rmap, zeta[idx].real)
            plus[:, idx] = [eval_series(c, x) for c in cp]
            minus[:, idx] = [eval_series(c, x) for c in cm]
    off = ~on
    if off.any():
        vals = contour_transform(sol.grid.rmap, sol.coeffs, zeta[off])
        idx_off = np.flatnonzero(off)
        A, B, C = sol.problem.sample(alpha[off])
        for k, idx in enumerate(idx_off):
            if above[idx]:
                plus[:, idx] = vals[:, k]
                minus[:, idx] = -np.linalg.solve(B[:, :, k], A[:, :, k] @ vals[:, k] + C[:, k])
            else:
                minus[:, idx] = vals[:, k]
                plus[:, idx] = -np.linalg.solve(A[:, :, k], B[:, :, k] @ vals[:, k] + C[:, k])
    return plus, minus
