"""Numerical self-checks shared by the test suite and the CLI."""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .cauchy import assemble_side, cauchy_basis_row, contour_transform
from .chebyshev import (
    chebyshev_moments,
    chebyshev_points,
    chebyshev_vandermonde,
    clenshaw_curtis_weights,
    eval_series,
    values_to_coeffs,
)
from .mappings import Branch, FOUR_TO_ONE, TWO_TO_ONE, map_derivative, map_forward, preimages_general

PLEMELJ_TOL = 1e-13
ROUNDTRIP_TOL = 1e-12
QUAD_TOL = 1e-9
CC_TOL = 1e-13


@dataclass(frozen=True)
class SuiteResult:
    name: str
    value: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.tol)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name:<18} {status}  max deviation {self.value:.3e} (tol {self.tol:.0e})"


def plemelj_deviation(rmap, n: int, perturb: float = 0.0) -> float:
    """Max interior-row deviation of ``C+ - C- - I`` with independently built sides."""
    cp = np.array(assemble_side(rmap, n, 1))
    cm = assemble_side(rmap, n, -1)
    if perturb:
        cp[1:-1] += perturb
    dev = cp - cm - np.eye(n)
    return float(np.abs(dev[1:-1]).max())


def plemelj_suite(perturb: float = 0.0) -> SuiteResult:
    dev = max(plemelj_deviation(m, n, perturb) for m in (TWO_TO_ONE, FOUR_TO_ONE) for n in (33, 129))
    return SuiteResult("plemelj", dev, PLEMELJ_TOL)


def roundtrip_suite(samples: int = 1000, seed: int = 0) -> SuiteResult:
    """Inverse branches then forward map, and semicircle preimages on |x| = 1."""
    rng = np.random.default_rng(seed)
    alphas = np.tan(np.pi * (rng.random(samples) - 0.5))
    worst = 0.0
    for rmap in (TWO_TO_ONE, FOUR_TO_ONE):
        for a in alphas:
            for p in preimages_general(rmap, a):
                if p.branch in (Branch.UPPER_SEMICIRCLE, Branch.LOWER_SEMICIRCLE):
                    worst = max(worst, abs(abs(p.value) - 1))
                back = complex(map_forward(rmap, p.value))
                worst = max(worst, abs(back - a) / max(1.0, abs(a)))
    return SuiteResult("mapping-roundtrip", worst, ROUNDTRIP_TOL)


def _cquad(fn, a, b) -> complex:
    kw = dict(limit=400, epsabs=1e-13, epsrel=1e-13)
    re = quad(lambda t: fn(t).real, a, b, **kw)[0]
    im = quad(lambda t: fn(t).imag, a, b, **kw)[0]
    return re + 1j * im


def interval_row_quadrature(z: complex, n: int) -> np.ndarray:
    """Cauchy transforms of ``T_0..T_{n-1}`` over [-1, 1] by adaptive quadrature."""
    out = np.empty(n, dtype=complex)
    for k in range(n):
        out[k] = _cquad(lambda t: np.cos(k * np.arccos(t)) / (t - z), -1, 1) / (2j * np.pi)
    return out


def mapped_transform_quadrature(rmap, coeffs, zeta: complex) -> complex:
    """Cauchy transform over the real line of ``f(M^{-1}(t))``, in the map variable."""

    def integrand(x):
        return eval_series(coeffs, x) * map_derivative(rmap, x) / (map_forward(rmap, x) - zeta)

    return _cquad(integrand, -1, 1) / (2j * np.pi)


def oracle_density(n: int = 33) -> np.ndarray:
    """Chebyshev coefficients of a smooth density vanishing at both endpoints."""
    x = chebyshev_points(n)
    return values_to_coeffs((1 - x) * (1 + x) * np.exp(x) / (2 + x))


ORACLE_POINTS = (1j, 0.3 + 0.2j, -2 + 0.5j, 1.5 - 0.3j, -0.4 - 2j)
MAPPED_POINTS = (1j, 0.5 + 0.25j, -3 + 0.5j, 2 - 0.1j, -0.2 - 4j)


def quadrature_oracle_suite() -> SuiteResult:
    worst = abs(cauchy_basis_row(1j, 1).values[0] - 0.25)
    for z in ORACLE_POINTS:
        row = cauchy_basis_row(z, 12).values
        worst = max(worst, np.abs(row - interval_row_quadrature(z, 12)).max())
    c = oracle_density()
    for rmap in (TWO_TO_ONE, FOUR_TO_ONE):
        for z in MAPPED_POINTS:
            worst = max(worst, np.abs(contour_transform(rmap, c, z) - mapped_transform_quadrature(rmap, c, z)).max())
    return SuiteResult("cauchy-quadrature", float(worst), QUAD_TOL)


def clenshaw_curtis_suite() -> SuiteResult:
    worst = 0.0
    for n in (2, 3, 9, 33, 129, 257):
        x = chebyshev_points(n)
        got = clenshaw_curtis_weights(n) @ chebyshev_vandermonde(x, n)
        worst = max(worst, np.abs(got - chebyshev_moments(n)).max())
    return SuiteResult("clenshaw-curtis", float(worst), CC_TOL)


def run_all(perturb: float = 0.0) -> list:
    """All suites in a fixed order. ``perturb`` shifts C+ to exercise the Plemelj check."""
    return [plemelj_suite(perturb), roundtrip_suite(), quadrature_oracle_suite(), clenshaw_curtis_suite()]

