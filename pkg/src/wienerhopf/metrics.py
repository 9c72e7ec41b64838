"""Error norms on the mapped interval and in alpha, and convergence sweeps."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .chebyshev import clenshaw_curtis_weights, eval_series, values_to_coeffs
from .diffraction import PhysicalParams, solve_catalogue, sommerfeld_exact


def _diff(exact, numeric) -> np.ndarray:
    exact = np.asarray(exact)
    numeric = np.asarray(numeric)
    if exact.shape != numeric.shape:
        raise ValueError(f"sample shapes differ: {exact.shape} vs {numeric.shape}")
    return np.abs(exact - numeric)


def e_norm(exact, numeric, r=2) -> float:
    """Error on the mapped interval, ``E^r_n``.

    ``r = 2`` uses Clenshaw-Curtis weights on the Chebyshev grid the samples
    live on; ``r = inf`` is the sample maximum.

    >>> bool(round(e_norm(np.zeros(9), np.full(9, 0.5)), 12) == round(0.5 * np.sqrt(2), 12))
    True
    """
    d = _diff(exact, numeric)
    if r == np.inf or r == "inf":
        return float(d.max())
    if r != 2:
        raise ValueError(f"only r = 2 and r = inf are supported, got {r}")
    w = clenshaw_curtis_weights(d.size)
    return float(np.sqrt(np.sum(w * d**2)))


def e_alpha_norm(exact, numeric, grid, r=2) -> float:
    """Error in the alpha variable, ``E^2`` weighted by ``|dalpha/dx|``.

    Endpoint terms are dropped: ``dalpha/dx`` is infinite there while the
    compared functions both vanish.
    """
    if r != 2:
        raise ValueError(f"only r = 2 is supported, got {r}")
    d = _diff(exact, numeric)
    if d.size != grid.n:
        raise ValueError(f"expected {grid.n} samples, got {d.size}")
    w = clenshaw_curtis_weights(grid.n)[1:-1]
    jac = np.abs(grid.dalpha_dx[1:-1])
    return float(np.sqrt(abs(np.sum(w * d[1:-1] ** 2 * jac))))


@dataclass(frozen=True)
class Reference:
    """Convergence reference: the exact solution or a finer solve."""

    n_ref: Optional[int] = None

    @property
    def is_exact(self) -> bool:
        return self.n_ref is None

    def __str__(self) -> str:
        return "exact" if self.is_exact else f"self:{self.n_ref}"

    @classmethod
    def parse(cls, text) -> "Reference":
        """Read ``"exact"`` or ``"self:<n>"``.

        >>> Reference.parse("self:257").n_ref
        257
        """
        if isinstance(text, Reference):
            return text
        text = str(text).strip().lower()
        if text == "exact":
            return cls()
        if text.startswith("self:"):
            return cls(int(text[5:]))
        raise ValueError(f"reference must be 'exact' or 'self:<n>', got {text!r}")


EXACT = Reference()


@dataclass(frozen=True)
class ConvergenceRecord:
    """Norms at one resolution; the headline values are maxima over functions."""

    n: int
    e2: float
    einf: float
    ealpha2: float
    reference: Reference
    per_function: dict = field(default_factory=dict, compare=False)


def _norms(exact, numeric, grid) -> tuple:
    return e_norm(exact, numeric, 2), e_norm(exact, numeric, np.inf), e_alpha_norm(exact, numeric, grid)


def _exact_tracked(sol) -> dict:
    alpha = sol.grid.alpha_rotated[1:-1]
    plus, minus = sommerfeld_exact(sol.params, alpha)
    out = {}
    for label, vals in zip(("phi_plus_prime", "d_minus"), (plus, minus)):
        full = np.zeros(sol.n, dtype=complex)
        full[1:-1] = vals
        out[label] = full
    return out


def _resampled(ref_tracked: dict, x) -> dict:
    return {label: eval_series(values_to_coeffs(vals), x) for label, vals in ref_tracked.items()}


def record_against(sol, reference_values: dict, reference: Reference) -> ConvergenceRecord:
    """Compare a solution's tracked functions with reference samples on its grid."""
    per = {}
    for label, vals in sol.tracked().items():
        per[label] = _norms(reference_values[label], vals, sol.grid)
    e2, einf, ea = (max(v[i] for v in per.values()) for i in range(3))
    return ConvergenceRecord(sol.n, e2, einf, ea, reference, per)


def convergence_sweep(problem: str, params: PhysicalParams, n_list, reference="exact",
                      rmap="4to1", chi: float = np.pi / 4, max_workers: int = 1) -> list:
    """One :class:`ConvergenceRecord` per resolution in ``n_list``.

    Parameters
    ----------
    problem : str
        Catalogue name.
    reference : str or Reference
        ``"exact"`` (Sommerfeld only) or ``"self:<n_ref>"``, where the
        ``n_ref`` solution is resampled on each coarser grid.
    max_workers : int
        Solves run in a thread pool of this size; output order follows
        ``n_list``.
    """
    reference = Reference.parse(reference)
    n_list = [int(n) for n in n_list]
    if not n_list:
        raise ValueError("n_list is empty")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError(f"n_list must be strictly increasing, got {n_list}")
    if reference.is_exact and problem != "sommerfeld":
        raise ValueError(f"the exact reference is only available for sommerfeld, not {problem!r}")
    if not reference.is_exact and reference.n_ref <= n_list[-1]:
        raise ValueError(f"reference resolution {reference.n_ref} must exceed max n {n_list[-1]}")

    def run(n):
        return solve_catalogue(problem, params, n, rmap, chi)

    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as pool:
        sols = list(pool.map(run, n_list))
    if reference.is_exact:
        return [record_against(s, _exact_tracked(s), reference) for s in sols]
    ref_tracked = run(reference.n_ref).tracked()
    return [record_against(s, _resampled(ref_tracked, s.grid.x), reference) for s in sols]
