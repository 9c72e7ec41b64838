"""Half-plane diffraction problems posed as Riemann-Hilbert problems.

Catalogue:

* Sommerfeld hard-hard half-plane (scalar, exact factorization known),
* Senior equal-impedance half-plane (2x2 matrix form and two scalar forms),
* Hurd unequal-impedance half-plane (2x2 matrix form).

Branch cuts of ``gamma(alpha) = (alpha^2 - k^2)^{1/2}`` run vertically from
``+k`` upwards and from ``-k`` downwards, so they stay in the first and third
quadrants and never meet the rotated contour ``R e^{-i chi}``.
"""

import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ContourError
from .rh import RHProblem, RHSolution, solve

_E_PI4 = np.exp(1j * np.pi / 4)


@dataclass(frozen=True)
class PhysicalParams:
    """Physical parameters shared by the catalogue.

    ``S`` is Senior's impedance parameter; Hurd's impedances are
    ``S_j = sin(theta_j)``. ``epsilon`` adds a small positive imaginary part
    to ``k`` for diagnostics.
    """

    theta0: float
    k: float = 1.0
    S: Optional[float] = None
    theta1: Optional[float] = None
    theta2: Optional[float] = None
    epsilon: float = 0.0

    @property
    def kc(self) -> complex:
        return self.k + 1j * self.epsilon

    def as_dict(self) -> dict:
        return {
            name: getattr(self, name)
            for name in ("k", "theta0", "S", "theta1", "theta2", "epsilon")
            if getattr(self, name) is not None
        }


def sqrt_up(w):
    """Square root with its cut along the positive imaginary axis."""
    w = np.asarray(w, dtype=complex)
    return np.conj(_E_PI4) * np.sqrt(1j * w)


def sqrt_down(w):
    """Square root with its cut along the negative imaginary axis."""
    w = np.asarray(w, dtype=complex)
    return _E_PI4 * np.sqrt(-1j * w)


def _on_cut(alpha, k):
    a = np.asarray(alpha, dtype=complex)
    up = (a.real == np.real(k)) & (a.imag >= np.imag(k))
    dn = (a.real == -np.real(k)) & (a.imag <= -np.imag(k))
    return np.any(up | dn)


def gamma_eval(k, alpha):
    """``gamma(alpha)`` with ``gamma(0) = -i k`` and ``gamma ~ alpha`` at +infinity.

    >>> complex(gamma_eval(1.0, 2.0)).real  # sqrt(3)
    1.7320508075688772
    """
    if _on_cut(alpha, k):
        raise ContourError("gamma evaluated on a branch cut")
    out = sqrt_up(np.asarray(alpha) - k) * sqrt_down(np.asarray(alpha) + k)
    return out if out.ndim else out[()]


def beta_eval(k, alpha):
    """``beta = i gamma``, so ``beta(0) = k`` and ``beta^2 = k^2 - alpha^2``."""
    return 1j * gamma_eval(k, alpha)


def _warn_near(theta, target, what):
    if abs(theta - target) < 0.05:
        warnings.warn(f"{what} is within 0.05 rad of {target:.4f}; convergence is slower there", stacklevel=3)


def _check_sommerfeld(p: PhysicalParams):
    if not -np.pi / 2 < p.theta0 < np.pi / 2:
        raise ValueError(f"Sommerfeld needs -pi/2 < theta0 < pi/2, got theta0={p.theta0}")
    _warn_near(abs(p.theta0), np.pi / 2, "theta0")


def _branch_points(k):
    return (("branch point +k", k), ("branch point -k", -k))


def sommerfeld_problem(params: PhysicalParams, rmap="4to1", chi: float = np.pi / 4) -> RHProblem:
    """Hard-hard half-plane: ``A = 1/gamma``, ``B = 1``,
    ``C = k sin(theta0) / (gamma (alpha - k cos(theta0)))``.

    ``Phi+`` is ``Phi'_+(0)`` and ``Phi-`` is ``D_-``.
    """
    _check_sommerfeld(params)
    k = params.kc
    s0, c0 = np.sin(params.theta0), np.cos(params.theta0)

    def A(a):
        return 1 / gamma_eval(k, a)

    def C(a):
        return k * s0 / (gamma_eval(k, a) * (a - k * c0))

    return RHProblem(
        m=1,
        coeff_A=A,
        coeff_B=lambda a: np.ones_like(a),
        rhs_C=C,
        chi=chi,
        name="sommerfeld",
        params=params,
        singularities=_branch_points(k) + (("incident pole k cos(theta0)", k * c0),),
        plus_labels=("phi_plus_prime",),
        minus_labels=("d_minus",),
        metadata={"row_scaling": "1/gamma"},
    ).replace(rmap=rmap)


def sommerfeld_exact(params: PhysicalParams, alpha):
    """Closed-form ``(Phi'_+(0), D_-)`` from the exact factorization.

    ``Phi'_+`` has a removable singularity at ``alpha = k cos(theta0)``
    which is filled in with its limit.
    """
    k = params.kc
    s0, c0 = np.sin(params.theta0), np.cos(params.theta0)
    a = np.atleast_1d(np.asarray(alpha, dtype=complex))
    root0 = np.sqrt(k + k * c0)
    pole = np.isclose(a, k * c0, rtol=0, atol=1e-12)
    ap = np.where(pole, a + 1.0, a)
    g = k * s0 / (ap - k * c0)
    sp = sqrt_down(ap + k)
    h_plus = g * (1 / sp - 1 / root0)
    h_minus = g / root0
    phi_plus = -sp * h_plus
    d_minus = -h_minus / sqrt_up(ap - k)
    phi_plus = np.where(pole, k * s0 / (2 * (k + k * c0)), phi_plus)
    d_minus = np.where(pole, np.nan, d_minus)
    if np.ndim(alpha) == 0:
        return phi_plus[0], d_minus[0]
    return phi_plus, d_minus


def _check_senior(p: PhysicalParams):
    if p.S is None:
        raise ValueError("Senior problem needs the impedance parameter S")
    if not np.pi / 2 < p.theta0 < 3 * np.pi / 2:
        raise ValueError(f"Senior needs pi/2 < theta0 < 3pi/2, got theta0={p.theta0}")
    _warn_near(p.theta0, np.pi / 2, "theta0")
    _warn_near(p.theta0, 3 * np.pi / 2, "theta0")
    if abs(p.S) < 0.05:
        warnings.warn("impedance S is close to 0; convergence is slower there", stacklevel=3)


def senior_matrix_problem(params: PhysicalParams, rmap="4to1", chi: float = np.pi / 4) -> RHProblem:
    """Equal-impedance half-plane as a 2x2 problem.

    Unknowns ``Phi+ = (Phi'_+(0+), Phi'_+(0-))`` and
    ``Phi- = (Phi'_-(0), Phi_-(0))``.
    """
    _check_senior(params)
    k, S = params.kc, params.S
    s0, c0 = np.sin(params.theta0), np.cos(params.theta0)

    def A(a):
        d = 1 / gamma_eval(k, a) + 1j * S
        z = np.zeros_like(d)
        return np.array([[d, z], [z, d]])

    def B(a):
        ig = 1 / gamma_eval(k, a)
        one = np.ones_like(ig)
        return np.array([[ig, one], [ig, -one]])

    def C(a):
        f = -1j / (a - k * c0)
        return np.array([f * (1 - S * k * s0), f * (-1 - S * k * s0)])

    return RHProblem(
        m=2,
        coeff_A=A,
        coeff_B=B,
        rhs_C=C,
        chi=chi,
        name="senior-matrix",
        params=params,
        singularities=_branch_points(k) + (("incident pole k cos(theta0)", k * c0),),
        plus_labels=("phi_plus_prime_0p", "phi_plus_prime_0m"),
        minus_labels=("phi_minus_prime_0", "phi_minus_0"),
        metadata={"row_scaling": "1/gamma"},
    ).replace(rmap=rmap)


def senior_scalar_problems(params: PhysicalParams, rmap="4to1", chi: float = np.pi / 4):
    """Sum and difference problems that decouple the Senior matrix problem.

    Sum: plus ``P = Phi'_+(0+) + Phi'_+(0-)``, minus ``2 Phi'_-(0)``.
    Difference: plus ``D = Phi'_+(0+) - Phi'_+(0-)``, minus ``2 Phi_-(0)``.
    """
    _check_senior(params)
    k, S = params.kc, params.S
    s0, c0 = np.sin(params.theta0), np.cos(params.theta0)

    def A(a):
        return 1 / gamma_eval(k, a) + 1j * S

    sing = _branch_points(k) + (("incident pole k cos(theta0)", k * c0),)
    common = dict(m=1, coeff_A=A, chi=chi, params=params, singularities=sing,
                  metadata={"row_scaling": "1/gamma"})
    sum_problem = RHProblem(
        coeff_B=lambda a: 1 / gamma_eval(k, a),
        rhs_C=lambda a: 2j * S * k * s0 / (a - k * c0),
        name="senior-sum",
        plus_labels=("sum_plus",),
        minus_labels=("two_phi_minus_prime_0",),
        **common,
    ).replace(rmap=rmap)
    diff_problem = RHProblem(
        coeff_B=lambda a: np.ones_like(a),
        rhs_C=lambda a: -2j / (a - k * c0),
        name="senior-difference",
        plus_labels=("difference_plus",),
        minus_labels=("two_phi_minus_0",),
        **common,
    ).replace(rmap=rmap)
    return sum_problem, diff_problem


@dataclass(frozen=True)
class SeniorScalarSolution:
    """Pair of scalar solutions recombined into the matrix-form unknowns."""

    sum_solution: RHSolution
    difference_solution: RHSolution
    name: str = "senior-scalar"
    labels: tuple = field(default=("phi_plus_prime_0p", "phi_plus_prime_0m",
                                   "phi_minus_prime_0", "phi_minus_0"))

    @property
    def params(self):
        return self.sum_solution.params

    @property
    def grid(self):
        return self.sum_solution.grid

    @property
    def n(self):
        return self.sum_solution.n

    @property
    def residual(self):
        return max(self.sum_solution.residual, self.difference_solution.residual)

    @property
    def condition(self):
        return max(self.sum_solution.condition, self.difference_solution.condition)

    @staticmethod
    def _combine(sp, sm, dp, dm):
        plus = np.array([(sp + dp) / 2, (sp - dp) / 2])
        minus = np.array([sm / 2, dm / 2])
        return plus, minus

    def boundary_values(self):
        sp, sm = self.sum_solution.boundary_values()
        dp, dm = self.difference_solution.boundary_values()
        return self._combine(sp[0], sm[0], dp[0], dm[0])

    def sectional(self, alpha):
        sp, sm = self.sum_solution.sectional(alpha)
        dp, dm = self.difference_solution.sectional(alpha)
        return self._combine(sp[0], sm[0], dp[0], dm[0])

    def tracked(self) -> dict:
        plus, minus = self.boundary_values()
        return dict(zip(self.labels, [*plus, *minus]))


def solve_senior_scalar(params: PhysicalParams, n: int, rmap="4to1", chi: float = np.pi / 4):
    """Solve both scalar Senior problems and recombine them."""
    sp, dp = senior_scalar_problems(params, rmap, chi)
    return SeniorScalarSolution(solve(sp, n), solve(dp, n))


def _check_hurd(p: PhysicalParams):
    if p.theta1 is None or p.theta2 is None:
        missing = "theta1" if p.theta1 is None else "theta2"
        raise ValueError(f"Hurd problem needs the impedance angle {missing}")
    if not -np.pi / 2 < p.theta0 < np.pi / 2:
        raise ValueError(f"Hurd needs -pi/2 < theta0 < pi/2, got theta0={p.theta0}")
    for name in ("theta1", "theta2"):
        t = getattr(p, name)
        if not 0 <= t <= np.pi / 2:
            raise ValueError(f"Hurd needs 0 <= {name} <= pi/2, got {t}")
        if abs(np.sin(t)) < 0.05:
            warnings.warn(f"impedance sin({name}) is close to 0; convergence is slower there", stacklevel=3)
    _warn_near(abs(p.theta0), np.pi / 2, "theta0")


def hurd_problem(params: PhysicalParams, rmap="4to1", chi: float = np.pi / 4) -> RHProblem:
    """Unequal-impedance half-plane as a 2x2 problem.

    ``A = [[1/beta, 0], [0, 1]]``,
    ``B = -1/2 [[1 + k S1/beta, 1 + k S1/beta], [-1 - k S2/beta, 1 + k S2/beta]]``,
    ``C = -(k / 2 pi i) ((S1 - S0)/(beta (alpha + k c0)), (S2 + S0)/(alpha + k c0))``.
    Unknowns ``(U1, U2)`` above and ``(L1, L2)`` below.
    """
    _check_hurd(params)
    k = params.kc
    s0, c0 = np.sin(params.theta0), np.cos(params.theta0)
    s1, s2 = np.sin(params.theta1), np.sin(params.theta2)

    def A(a):
        ib = 1 / beta_eval(k, a)
        one, z = np.ones_like(ib), np.zeros_like(ib)
        return np.array([[ib, z], [z, one]])

    def B(a):
        ib = 1 / beta_eval(k, a)
        t1 = 1 + k * s1 * ib
        t2 = 1 + k * s2 * ib
        return -0.5 * np.array([[t1, t1], [-t2, t2]])

    def C(a):
        ib = 1 / beta_eval(k, a)
        f = k / (2j * np.pi) / (a + k * c0)
        return -np.array([f * (s1 - s0) * ib, f * (s2 + s0)])

    return RHProblem(
        m=2,
        coeff_A=A,
        coeff_B=B,
        rhs_C=C,
        chi=chi,
        name="hurd",
        params=params,
        singularities=_branch_points(k) + (("incident pole -k cos(theta0)", -k * c0),),
        plus_labels=("U1", "U2"),
        minus_labels=("L1", "L2"),
        metadata={"row_scaling": "first row by 1/beta"},
    ).replace(rmap=rmap)


PROBLEMS = ("sommerfeld", "senior-scalar", "senior-matrix", "hurd")


def solve_catalogue(name: str, params: PhysicalParams, n: int, rmap="4to1", chi: float = np.pi / 4):
    """Solve a catalogue problem by name; Senior scalar returns the recombined pair."""
    if name == "sommerfeld":
        return solve(sommerfeld_problem(params, rmap, chi), n)
    if name == "senior-matrix":
        return solve(senior_matrix_problem(params, rmap, chi), n)
    if name == "senior-scalar":
        return solve_senior_scalar(params, n, rmap, chi)
    if name == "hurd":
        return solve(hurd_problem(params, rmap, chi), n)
    raise ValueError(f"unknown problem {name!r}; choose from {PROBLEMS}")
