import numpy as np
import pytest

from wienerhopf import PhysicalParams, RHProblem, solve, sommerfeld_exact, sommerfeld_problem
from wienerhopf.cauchy import assemble_cauchy
from wienerhopf.chebyshev import eval_series
from wienerhopf.diffraction import gamma_eval
from wienerhopf.errors import ContourError, RotationError, SolverError
from wienerhopf.rh import Side, assemble_system, build_grid, check_rotation, defect, half_plane_side

from conftest import SOMMERFELD

CATALOGUE = ["sommerfeld", "senior-matrix", "hurd"]


def test_grid_rotation():
    g0 = build_grid("4to1", 17, 0.0)
    np.testing.assert_array_equal(g0.alpha_rotated[1:-1], g0.alpha[1:-1])
    g = build_grid("2to1", 3, np.pi / 4)
    assert g.alpha[1] == 0
    g = build_grid("2to1", 5, np.pi / 4)
    # interior point x = -sqrt(2)/2 maps to alpha = -sqrt(2)
    assert g.alpha_rotated[1] == pytest.approx(-np.sqrt(2) * np.exp(-1j * np.pi / 4))
    assert 1.0 * np.exp(-1j * np.pi / 4) == pytest.approx(0.70711 - 0.70711j, abs=1e-5)
    assert g.infinite[0] and g.infinite[-1] and not g.infinite[1:-1].any()
    assert np.isnan(g.alpha_rotated[0]) and np.isnan(g.alpha_rotated[-1])


def test_grid_rejects_bad_rotation():
    with pytest.raises(ValueError):
        build_grid("4to1", 9, np.pi / 2)


def test_half_plane_side():
    assert half_plane_side(1j, 0) is Side.ABOVE
    assert half_plane_side(-1j, 0) is Side.BELOW
    assert half_plane_side(1.0, np.pi / 4) is Side.ABOVE
    with pytest.raises(ContourError):
        half_plane_side(np.exp(-1j * np.pi / 4), np.pi / 4)


def _problem(sing, chi=np.pi / 4):
    return RHProblem(1, lambda a: 1, lambda a: -1, lambda a: 0 * a, chi=chi, singularities=(("s", sing),))


def test_rotation_legality():
    check_rotation(_problem(0.8))
    check_rotation(_problem(-0.8 - 1j))
    with pytest.raises(RotationError):
        check_rotation(_problem(np.exp(-0.3j)))
    with pytest.raises(RotationError):
        check_rotation(_problem(-np.exp(-0.3j)))
    with pytest.raises(RotationError):
        check_rotation(_problem(np.exp(-1j * np.pi / 4)))
    with pytest.raises(RotationError):
        check_rotation(_problem(0.0))
    with pytest.raises(RotationError):
        check_rotation(_problem(1.0, chi=np.pi / 2))


def test_homogeneous_problem_gives_zero():
    p = RHProblem(1, lambda a: 1, lambda a: 2, lambda a: 0 * a)
    sol = solve(p, 17)
    assert np.abs(sol.density_values).max() == 0


@pytest.mark.parametrize("rmap", ["2to1", "4to1"])
def test_equal_coefficients_have_sawtooth_null_mode(rmap):
    # A = B makes the collocation matrix exactly singular; the solver must say so
    p = RHProblem(1, lambda a: 1, lambda a: 1, lambda a: 0 * a).replace(rmap=rmap)
    with pytest.raises(SolverError):
        solve(p, 17)


def test_pure_jump_problem_recovers_forcing():
    # Phi+ - Phi- = f has density f
    f = lambda a: 1 / (a - 2j) - 1 / (a + 2j)
    p = RHProblem(1, lambda a: 1, lambda a: -1, lambda a: -f(a))
    sol = solve(p, 129)
    np.testing.assert_allclose(sol.density_values[0, 1:-1], f(sol.grid.alpha_rotated[1:-1]), atol=1e-13)
    # the plus function is the part analytic above the contour
    plus, minus = sol.boundary_values()
    a = sol.grid.alpha_rotated[1:-1]
    np.testing.assert_allclose(plus[0, 1:-1], -1 / (a + 2j), atol=1e-8)
    np.testing.assert_allclose(minus[0, 1:-1], -1 / (a - 2j), atol=1e-8)
    p2 = p.replace(rmap="2to1")
    plus2, _ = solve(p2, 129).boundary_values()
    np.testing.assert_allclose(plus2[0, 1:-1], -1 / (solve(p2, 129).grid.alpha_rotated[1:-1] + 2j), atol=1e-12)


def test_sommerfeld_system_entries():
    prob = sommerfeld_problem(SOMMERFELD)
    grid = build_grid(prob.rmap, 33, prob.chi)
    pair = assemble_cauchy(prob.rmap, 33)
    M, rhs = assemble_system(prob, grid, pair)
    a = grid.alpha_rotated[1:-1]
    g = gamma_eval(1.0, a)
    want = pair.c_plus[1:-1] / g[:, None] + pair.c_minus[1:-1]
    np.testing.assert_allclose(M[1:-1], want, rtol=1e-15)
    k, t0 = 1.0, np.pi / 5
    np.testing.assert_allclose(rhs[1:-1], -k * np.sin(t0) / (g * (a - k * np.cos(t0))), rtol=1e-15)
    assert M[0, 0] == 1 and M[-1, -1] == 1 and rhs[0] == 0


def test_block_system_layout():
    I = lambda a: np.eye(2)[:, :, None] * np.ones(a.size)
    p = RHProblem(2, I, I, lambda a: np.zeros((2, a.size)))
    grid = build_grid("4to1", 9, np.pi / 4)
    pair = assemble_cauchy("4to1", 9)
    M, _ = assemble_system(p, grid, pair)
    assert M.shape == (18, 18)
    assert np.all(M[1:8, 9:] == 0) and np.all(M[10:17, :9] == 0)
    np.testing.assert_array_equal(M[10:17, 9:], M[1:8, :9])


def test_assemble_rejects_mismatched_pair():
    p = sommerfeld_problem(SOMMERFELD)
    with pytest.raises(ValueError):
        assemble_system(p, build_grid("4to1", 9, np.pi / 4), assemble_cauchy("4to1", 17))


def test_nonfinite_coefficients_rejected():
    p = RHProblem(1, lambda a: 1 / (a - a), lambda a: 1, lambda a: 0 * a)
    with np.errstate(divide="ignore", invalid="ignore"), pytest.raises(ContourError):
        solve(p, 9)


def test_singular_system_raises():
    p = RHProblem(1, lambda a: 0 * a, lambda a: 0 * a, lambda a: 1 + 0 * a)
    with pytest.raises(SolverError) as info:
        solve(p, 9)
    assert info.value.condition is not None


def test_small_n_rejected():
    with pytest.raises(ValueError):
        solve(sommerfeld_problem(SOMMERFELD), 5)


@pytest.mark.parametrize("name", CATALOGUE + ["senior-scalar"])
def test_defect_and_residual(solved, name):
    sol = solved(name)
    if name == "senior-scalar":
        assert defect(sol.sum_solution) <= 1e-10 and defect(sol.difference_solution) <= 1e-10
    else:
        assert defect(sol) <= 1e-10
    assert sol.residual <= 1e-10
    assert sol.condition < 1e12


def test_plus_minus_difference_is_density(solved):
    sol = solved("sommerfeld")
    plus, minus = sol.boundary_values()
    np.testing.assert_allclose((plus - minus)[:, 1:-1], sol.density_values[:, 1:-1], atol=1e-13)
    assert np.abs(sol.density_values[:, [0, -1]]).max() <= 1e-15


def test_solution_is_immutable(solved):
    sol = solved("sommerfeld")
    with pytest.raises(Exception):
        sol.residual = 0.0


def test_sommerfeld_boundary_values_match_exact(solved):
    sol = solved("sommerfeld")
    t = sol.tracked()
    a = sol.grid.alpha_rotated[1:-1]
    pp, dm = sommerfeld_exact(SOMMERFELD, a)
    assert np.abs(t["phi_plus_prime"][1:-1] - pp).max() <= 1e-7
    assert np.abs(t["d_minus"][1:-1] - dm).max() <= 1e-8


def test_offcontour_matches_exact_below(solved):
    sol = solved("sommerfeld")
    for z in (-2j, 1 - 3j, -4 - 1j):
        assert half_plane_side(z, sol.grid.chi) is Side.BELOW
        assert abs(sol.evaluate_offcontour(z)[0, 0] - sommerfeld_exact(SOMMERFELD, z)[1]) <= 1e-8


def test_offcontour_matches_exact_above(solved):
    sol = solved("sommerfeld")
    for z in (2j, 3 - 1j):
        assert half_plane_side(z, sol.grid.chi) is Side.ABOVE
        assert abs(sol.evaluate_offcontour(z)[0, 0] - sommerfeld_exact(SOMMERFELD, z)[0]) <= 1e-8


def test_offcontour_decays_along_ray(solved):
    sol = solved("sommerfeld")
    rays = np.array([1e1, 1e2, 1e3, 1e4, 1e6]) * 1j
    vals = sol.evaluate_offcontour(rays)[0]
    assert np.all(np.diff(np.abs(vals)) < 0)
    # far out the error tracks E^inf at n=129, near 1e-7
    np.testing.assert_allclose(vals, sommerfeld_exact(SOMMERFELD, rays)[0], rtol=0, atol=1e-7)
    # Phi'_+ decays like alpha^{-1/2}
    assert abs(vals[-1]) * 1e3 == pytest.approx(abs(vals[-2]) * 1e2, rel=1e-2)


def test_boundary_limit_from_above(solved):
    sol = solved("sommerfeld")
    plus, _ = sol.boundary_values()
    p = 40
    normal = 1j * np.exp(-1j * sol.grid.chi)
    a = sol.grid.alpha_rotated[p]
    errs = [abs(sol.evaluate_offcontour(a + eps * normal)[0, 0] - plus[0, p]) for eps in (1e-6, 1e-7)]
    assert errs[1] <= 1e-8
    assert errs[1] < errs[0]


def test_near_contour_evaluation_refused(solved):
    sol = solved("sommerfeld")
    with pytest.raises(ContourError):
        sol.evaluate_offcontour(2 * np.exp(-1j * np.pi / 4))


def test_sectional_on_contour_interpolates_boundary_values(solved):
    sol = solved("sommerfeld")
    plus, minus = sol.boundary_values()
    a = sol.grid.alpha_rotated[30]
    p, m = sol.sectional(a)
    assert abs(p[0, 0] - plus[0, 30]) <= 1e-10
    assert abs(m[0, 0] - minus[0, 30]) <= 1e-10


def test_rotation_consistency():
    z = -1 + 3j
    vals = [solve(sommerfeld_problem(SOMMERFELD, chi=chi), 257).evaluate_offcontour(z)[0, 0]
            for chi in (np.pi / 4, np.pi / 6)]
    assert abs(vals[0] - vals[1]) <= 1e-8


@pytest.mark.parametrize("name", CATALOGUE)
def test_mesh_independence_at_attainable_level(solved, name):
    a, b = solved(name, 129), solved(name, 257)
    diff = max(np.abs(eval_series(c, a.grid.x) - v).max() for c, v in zip(b.coeffs, a.density_values))
    assert diff <= 1e-7


@pytest.mark.xfail(strict=True, reason="n=129 is pre-asymptotic for the nearest singularities at chi=pi/4; see ledger")
@pytest.mark.parametrize("name", ["sommerfeld", "senior-matrix"])
def test_mesh_independence_pinned(solved, name):
    a, b = solved(name, 129), solved(name, 257)
    diff = max(np.abs(eval_series(c, a.grid.x) - v).max() for c, v in zip(b.coeffs, a.density_values))
    assert diff <= 1e-8


@pytest.mark.xfail(strict=True, reason="65 to 129 still sits on the steep part of the decay; see ledger")
def test_doubling_65_to_129_pinned(solved):
    a, b = solved("sommerfeld", 65), solved("sommerfeld", 129)
    assert np.abs(eval_series(b.coeffs[0], a.grid.x) - a.density_values[0]).max() <= 1e-8


@pytest.mark.parametrize("name", CATALOGUE)
def test_coefficients_decay_geometrically(solved, name):
    sol = solved(name)
    for c in sol.coeffs:
        env = np.maximum.accumulate(np.abs(c)[::-1])[::-1] / np.abs(c).max()
        # envelope at n/4, n/2, 3n/4 falls by a roughly constant factor
        e = env[[32, 64, 96]]
        assert e[1] < 1e-2 * e[0] and e[2] < 1e-2 * e[1]


@pytest.mark.xfail(strict=True, reason="tail ratio reaches about 4e-5 at n=129; see ledger")
@pytest.mark.parametrize("name", CATALOGUE)
def test_coefficient_tail_pinned(solved, name):
    sol = solved(name)
    assert max(np.abs(c[65:]).max() / np.abs(c).max() for c in sol.coeffs) <= 1e-8
