import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from wienerhopf import convergence_sweep, e_alpha_norm, e_norm, solve, sommerfeld_exact, sommerfeld_problem
from wienerhopf.chebyshev import chebyshev_points, eval_series, values_to_coeffs
from wienerhopf.metrics import EXACT, Reference
from wienerhopf.mappings import map_derivative
from wienerhopf.rh import build_grid

from conftest import HURD, SENIOR, SOMMERFELD


def test_identical_inputs_give_zero():
    v = np.exp(1j * chebyshev_points(17))
    assert e_norm(v, v) == 0
    assert e_norm(v, v, np.inf) == 0
    assert e_alpha_norm(v, v, build_grid("4to1", 17, np.pi / 4)) == 0


@pytest.mark.parametrize("c", [0.3, 2 - 1j, 1e-9j])
def test_constant_error(c):
    z = np.zeros(33, dtype=complex)
    assert e_norm(z, z + c) == pytest.approx(abs(c) * np.sqrt(2), rel=1e-14)
    assert e_norm(z, z + c, np.inf) == pytest.approx(abs(c))


def test_argument_checks():
    with pytest.raises(ValueError):
        e_norm(np.zeros(5), np.zeros(6))
    with pytest.raises(ValueError):
        e_norm(np.zeros(5), np.zeros(5), 1)
    with pytest.raises(ValueError):
        e_alpha_norm(np.zeros(9), np.zeros(9), build_grid("4to1", 17, 0.0))


@settings(max_examples=50, deadline=None)
@given(n=st.integers(2, 200), scale=st.floats(-1e3, 1e3).filter(lambda v: v == 0 or abs(v) > 1e-100), seed=st.integers(0, 2**32 - 1))
def test_norm_axioms(n, scale, seed):
    rng = np.random.default_rng(seed)
    d = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    z = np.zeros(n)
    e2, einf = e_norm(z, d), e_norm(z, d, np.inf)
    assert e2 >= 0 and einf >= 0
    assert e_norm(z, scale * d) == pytest.approx(abs(scale) * e2, rel=1e-12, abs=1e-300)
    assert e2 <= np.sqrt(2) * einf * (1 + 1e-14)
    assert e2 <= np.sqrt(2) * einf * np.sqrt(2)


@pytest.mark.parametrize("rmap", ["2to1", "4to1"])
def test_alpha_norm_matches_quadrature(rmap):
    grid = build_grid(rmap, 33, np.pi / 4)
    x = grid.x
    err = (1 - x**2) ** 2
    got = e_alpha_norm(np.zeros(33), err, grid)
    inner = grid.rmap
    ref = quad(lambda t: (1 - t * t) ** 4 * map_derivative(inner, t) if abs(t) < 1 else 0.0, -1, 1, epsabs=1e-14)[0]
    assert got == pytest.approx(np.sqrt(ref), abs=1e-10)


def test_mapped_norm_two_ways():
    n = 129
    sol = convergence_sweep("sommerfeld", SOMMERFELD, [n])[0]
    s = solve(sommerfeld_problem(SOMMERFELD), n)
    ex = np.zeros(n, dtype=complex)
    ex[1:-1] = sommerfeld_exact(SOMMERFELD, s.grid.alpha_rotated[1:-1])[1]
    d = values_to_coeffs(s.tracked()["d_minus"] - ex)
    ref = quad(lambda t: abs(eval_series(d, t)) ** 2, -1, 1, limit=400, epsabs=1e-16)[0]
    assert sol.per_function["d_minus"][0] == pytest.approx(np.sqrt(ref), rel=0.05, abs=1e-10)


def test_reference_parsing():
    assert Reference.parse("exact") == EXACT
    assert Reference.parse(" Self:257 ").n_ref == 257
    assert str(Reference(65)) == "self:65"
    assert str(EXACT) == "exact"
    with pytest.raises(ValueError):
        Reference.parse("best")


def test_sommerfeld_exact_sweep_is_spectral():
    recs = convergence_sweep("sommerfeld", SOMMERFELD, [17, 33, 65, 129])
    e2 = [r.e2 for r in recs]
    assert all(b < a / 10 for a, b in zip(e2, e2[1:]))
    assert e2[-1] <= 1e-8
    assert all(r.reference == EXACT for r in recs)
    assert set(recs[-1].per_function) == {"phi_plus_prime", "d_minus"}


def test_two_to_one_is_much_worse():
    rec = convergence_sweep("sommerfeld", SOMMERFELD, [100], rmap="2to1")[0]
    assert 1e-4 <= rec.e2 <= 1e-2


@pytest.mark.parametrize("name, params", [("senior-matrix", SENIOR), ("hurd", HURD)])
def test_self_convergence_every_unknown(name, params):
    recs = convergence_sweep(name, params, [33, 65, 129], "self:257")
    for label in recs[0].per_function:
        e = [r.per_function[label][0] for r in recs]
        assert e[0] > e[1] > e[2]
        assert e[2] <= 1e-8


def test_threaded_sweep_is_deterministic():
    a = convergence_sweep("sommerfeld", SOMMERFELD, [17, 33, 65])
    b = convergence_sweep("sommerfeld", SOMMERFELD, [17, 33, 65], max_workers=3)
    assert a == b


def test_sweep_validation():
    with pytest.raises(ValueError, match="must exceed"):
        convergence_sweep("sommerfeld", SOMMERFELD, [65, 257], "self:257")
    with pytest.raises(ValueError, match="only available"):
        convergence_sweep("hurd", HURD, [17])
    with pytest.raises(ValueError, match="increasing"):
        convergence_sweep("sommerfeld", SOMMERFELD, [33, 17])
    with pytest.raises(ValueError, match="empty"):
        convergence_sweep("sommerfeld", SOMMERFELD, [])
