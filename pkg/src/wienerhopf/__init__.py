"""Spectral Riemann-Hilbert solver for Wiener-Hopf problems with half-plane diffraction examples."""

from .diffraction import (
    PROBLEMS,
    PhysicalParams,
    hurd_problem,
    senior_matrix_problem,
    senior_scalar_problems,
    solve_catalogue,
    solve_senior_scalar,
    sommerfeld_exact,
    sommerfeld_problem,
)
from .errors import ClassificationError, ContourError, RotationError, SolverError, WienerHopfError
from .farfield import DirectivityCurve, directivity, sommerfeld_directivity_exact
from .mappings import FOUR_TO_ONE, TWO_TO_ONE, get_map
from .metrics import ConvergenceRecord, Reference, convergence_sweep, e_alpha_norm, e_norm
from .rh import RHProblem, RHSolution, solve

__all__ = [
    "PROBLEMS",
    "PhysicalParams",
    "hurd_problem",
    "senior_matrix_problem",
    "senior_scalar_problems",
    "solve_catalogue",
    "solve_senior_scalar",
    "sommerfeld_exact",
    "sommerfeld_problem",
    "ClassificationError",
    "ContourError",
    "RotationError",
    "SolverError",
    "WienerHopfError",
    "DirectivityCurve",
    "directivity",
    "sommerfeld_directivity_exact",
    "FOUR_TO_ONE",
    "TWO_TO_ONE",
    "get_map",
    "ConvergenceRecord",
    "Reference",
    "convergence_sweep",
    "e_alpha_norm",
    "e_norm",
    "RHProblem",
    "RHSolution",
    "solve",
]
