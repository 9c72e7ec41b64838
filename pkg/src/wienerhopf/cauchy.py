"""Cauchy transforms of the Chebyshev basis and the collocation matrices C+ and C-.

The Cauchy transform of ``T_k`` over [-1, 1] is written

    R_k(z) = T_k(z) R_0(z) + q_k(z) / (2 pi i),
    R_0(z) = log((z - 1)/(z + 1)) / (2 pi i),

where ``q_k`` is the polynomial generated by ``q_{k+1} = 2 z q_k - q_{k-1}
+ 2 m_k`` from ``q_0 = 0``, ``q_1 = 2`` and ``m_k`` are the Chebyshev
moments. For a density carried by a d-to-1 map M the transform over the
whole real line is the sum over preimages,

    C Phi(zeta) = sum_j C_I f(t_j) - (d/2) [C_I f(1) + C_I f(-1)],

with the endpoint values replaced by their finite parts mu^R, mu^L (exact
when f(+-1) = 0, which the decay rows enforce).
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .chebyshev import (
    chebyshev_moments,
    chebyshev_points,
    chebyshev_vandermonde,
    transform_matrix,
)
from .errors import ContourError
from .mappings import Branch, RationalMap, collocation_preimages, get_map, preimage_roots

_TWO_PI_I = 2j * np.pi

# Off the interval the forward closed form is used while T_k grows by at
# most this factor; beyond that the backward boundary-value solve takes over.
_GROWTH_LIMIT = 10.0
_BACKWARD_TOL = 1e-18


def joukowski_inverse(z):
    """``T+^{-1}(z) = z - sqrt(z-1) sqrt(z+1)`` with principal roots.

    Computed as ``1/(z + sqrt(z-1) sqrt(z+1))`` to avoid cancellation; the
    result lies inside the unit disk for z off [-1, 1].

    >>> round(complex(joukowski_inverse(-2.0)).real, 12)  # -2 + sqrt(3)
    -0.267949192431
    """
    z = np.asarray(z, dtype=complex)
    out = 1.0 / (z + np.sqrt(z - 1) * np.sqrt(z + 1))
    return out if out.ndim else out[()]


def joukowski(w):
    """Forward Joukowski map ``(w + 1/w)/2``."""
    w = np.asarray(w, dtype=complex)
    return 0.5 * (w + 1.0 / w)


def q_polynomials(z, n: int) -> np.ndarray:
    """``q_k(z)`` for ``k < n``; last axis indexes ``k``."""
    z = np.asarray(z, dtype=complex)
    m = chebyshev_moments(n)
    q = np.zeros(z.shape + (n,), dtype=complex)
    if n > 1:
        q[..., 1] = 2.0
    for k in range(1, n - 1):
        q[..., k + 1] = 2 * z * q[..., k] - q[..., k - 1] + 2 * m[k]
    return q


def _r0(z):
    return np.log((z - 1) / (z + 1)) / _TWO_PI_I


def _backward_rows(z, n: int, L: int) -> np.ndarray:
    # Tridiagonal solve of R_{k-1} - 2 z R_k + R_{k+1} = m_k/(pi i), k = 1..N,
    # with R_0 known and R_{N+1} = 0 (Olver's method), vectorized over z.
    N = n - 1 + L
    m = chebyshev_moments(N + 1)
    r0 = _r0(z)
    rhs = np.broadcast_to((m[1 : N + 1] / (1j * np.pi))[:, None], (N, z.size)).astype(complex)
    rhs[0] -= r0
    diag = -2 * z
    cp = np.empty((N, z.size), dtype=complex)
    dp = np.empty((N, z.size), dtype=complex)
    cp[0] = 1 / diag
    dp[0] = rhs[0] / diag
    for i in range(1, N):
        den = diag - cp[i - 1]
        cp[i] = 1 / den
        dp[i] = (rhs[i] - dp[i - 1]) / den
    sol = np.empty((N, z.size), dtype=complex)
    sol[-1] = dp[-1]
    for i in range(N - 2, -1, -1):
        sol[i] = dp[i] - cp[i] * sol[i + 1]
    out = np.empty((z.size, n), dtype=complex)
    out[:, 0] = r0
    out[:, 1:] = sol[: n - 1].T
    return out


def offaxis_rows(z, n: int, w=None) -> np.ndarray:
    """Rows ``[R_0(z), ..., R_{n-1}(z)]`` for points off [-1, 1].

    Parameters
    ----------
    z : array_like
        Evaluation points, none on [-1, 1].
    n : int
        Row length.
    w : array_like, optional
        Precomputed ``joukowski_inverse(z)``.
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex)).ravel()
    w = joukowski_inverse(z) if w is None else np.atleast_1d(np.asarray(w, dtype=complex)).ravel()
    aw = np.abs(w)
    if np.any(aw >= 1):
        raise ContourError("points on [-1, 1] need a side; use interval_rows")
    out = np.empty((z.size, n), dtype=complex)
    direct = aw ** (n - 1) * _GROWTH_LIMIT > 1
    if direct.any():
        zz = z[direct]
        out[direct] = chebyshev_vandermonde(zz, n) * _r0(zz)[:, None] + q_polynomials(zz, n) / _TWO_PI_I
    idx = np.flatnonzero(~direct)
    if idx.size:
        L = np.ceil(np.log(_BACKWARD_TOL) / np.log(aw[idx])).astype(int)
        # bucket by length so near-interval points do not set L for all
        bucket = np.ceil(np.log2(np.maximum(L, 1))).astype(int)
        for b in np.unique(bucket):
            sel = idx[bucket == b]
            out[sel] = _backward_rows(z[sel], n, int(L[bucket == b].max()))
    return out


def interval_rows(x, n: int, side: int = 1) -> np.ndarray:
    """Boundary values of ``[R_k]`` on (-1, 1) from above (+1) or below (-1)."""
    x = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
    if np.any(np.abs(x) >= 1):
        raise ContourError("interval rows need -1 < x < 1")
    r0 = (np.log((1 - x) / (1 + x)) + side * 1j * np.pi) / _TWO_PI_I
    return chebyshev_vandermonde(x, n) * r0[:, None] + q_polynomials(x, n) / _TWO_PI_I


@dataclass(frozen=True)
class BasisRow:
    """Cauchy transforms ``[C T_0(z), ..., C T_{n-1}(z)]`` at one point."""

    values: np.ndarray
    z: complex
    side: str


def cauchy_basis_row(z: complex, n: int, side: str = "off") -> BasisRow:
    """Row of Cauchy transforms of the first ``n`` Chebyshev polynomials.

    Parameters
    ----------
    z : complex
        Evaluation point, not an endpoint.
    n : int
    side : {"off", "plus", "minus"}
        ``"plus"``/``"minus"`` select the boundary value for z in (-1, 1).

    Examples
    --------
    >>> bool(abs(cauchy_basis_row(1j, 4).values[0] - 0.25) < 1e-15)
    True
    """
    z = complex(z)
    if z in (1, -1):
        raise ContourError("Cauchy transform diverges at the endpoints")
    on = z.imag == 0 and -1 < z.real < 1
    if side == "off":
        if on:
            raise ContourError("z lies on [-1, 1]; choose side='plus' or 'minus'")
        vals = offaxis_rows(z, n)[0]
    elif side in ("plus", "minus"):
        if not on:
            raise ContourError("boundary values need z in (-1, 1)")
        vals = interval_rows(z.real, n, 1 if side == "plus" else -1)[0]
    else:
        raise ValueError(f"unknown side {side!r}")
    return BasisRow(vals, z, side)


def endpoint_rows(n: int):
    """Finite parts ``(mu_L, mu_R)`` of ``[R_k]`` at z = -1 and z = +1."""
    q = q_polynomials(np.array([-1.0, 1.0]), n)
    return q[0] / _TWO_PI_I, q[1] / _TWO_PI_I


def _with_endpoint_rows(rows: np.ndarray, orientation, n: int) -> np.ndarray:
    mu = dict(zip("LR", endpoint_rows(n)))
    full = np.empty((n, n), dtype=complex)
    full[0] = mu[orientation[0]]
    full[-1] = mu[orientation[1]]
    full[1:-1] = rows
    return full @ transform_matrix(n)


def interval_plus_matrix(n: int, side: int = 1) -> np.ndarray:
    """Block for the interval branch: boundary values on the grid.

    Interior rows reduce to ``diag(R_0^+(x_p)) + Q F / (2 pi i)`` since
    ``[T_k(x_q)] F = I``.
    """
    x = chebyshev_points(n)[1:-1]
    return _with_endpoint_rows(interval_rows(x, n, side), ("L", "R"), n)


def exterior_block(ws, orientation, n: int, infinite=None) -> np.ndarray:
    """Block for a branch whose preimages lie off [-1, 1].

    Parameters
    ----------
    ws : array_like, shape (n-2,)
        Disk variables ``T+^{-1}`` of the interior-row preimages.
    orientation : pair of {"L", "R"}
        Endpoint rows placed first and last.
    n : int
    infinite : array_like of bool, optional
        Rows whose preimage is the point at infinity; these are zero.
    """
    ws = np.asarray(ws, dtype=complex)
    inf = np.zeros(ws.shape, bool) if infinite is None else np.asarray(infinite, bool)
    rows = np.zeros((ws.size, n), dtype=complex)
    fin = ~inf
    if fin.any():
        rows[fin] = offaxis_rows(joukowski(ws[fin]), n, w=ws[fin])
    return _with_endpoint_rows(rows, orientation, n)


@dataclass(frozen=True)
class CauchyPair:
    """Collocation matrices with ``c_plus - c_minus = I``."""

    c_plus: np.ndarray
    c_minus: np.ndarray
    rmap: RationalMap
    n: int


def assemble_side(rmap, n: int, side: int = 1) -> np.ndarray:
    """Assemble the boundary-value matrix from one side of the contour.

    ``side=-1`` builds C- independently of C+ (used for the Plemelj check).
    """
    rmap = get_map(rmap)
    if n < 4:
        raise ValueError(f"assembly needs n >= 4, got {n}")
    x = chebyshev_points(n)[1:-1]
    C = np.zeros((n, n), dtype=complex)
    for branch, vals, inf in collocation_preimages(rmap, x):
        orient = rmap.orientation[branch]
        if branch is Branch.INTERVAL:
            C += interval_plus_matrix(n, side)
        else:
            ws = np.where(inf, 0, joukowski_inverse(np.where(inf, 2.0, vals)))
            C += exterior_block(ws, orient, n, infinite=inf)
    mu_l, mu_r = endpoint_rows(n)
    C -= (rmap.degree / 2) * ((mu_l + mu_r) @ transform_matrix(n))[None, :]
    return C


@lru_cache(maxsize=16)
def _cached_pair(kind: str, n: int) -> CauchyPair:
    rmap = get_map(kind)
    cp = assemble_side(rmap, n, 1)
    cm = cp - np.eye(n)
    cp.setflags(write=False)
    cm.setflags(write=False)
    return CauchyPair(cp, cm, rmap, n)


def assemble_cauchy(rmap, n: int) -> CauchyPair:
    """C+ and C- = C+ - I for a map and grid size (cached, read-only)."""
    return _cached_pair(get_map(rmap).name, n)


def contour_transform(rmap, coeffs, zeta, n: Optional[int] = None):
    """Cauchy transform over the real line of a mapped Chebyshev density.

    Parameters
    ----------
    rmap : RationalMap or str
    coeffs : array_like, shape (m, n) or (n,)
        Chebyshev coefficients of the density in the map variable.
    zeta : array_like
        Points off the real line (in the unrotated variable).

    Returns
    -------
    ndarray, shape (m, len(zeta)) or (len(zeta),)
    """
    rmap = get_map(rmap)
    coeffs = np.asarray(coeffs, dtype=complex)
    single = coeffs.ndim == 1
    U = np.atleast_2d(coeffs)
    n = U.shape[1] if n is None else n
    zeta = np.atleast_1d(np.asarray(zeta, dtype=complex)).ravel()
    mu_l, mu_r = endpoint_rows(n)
    sub = (rmap.degree / 2) * (mu_l + mu_r)
    if np.any(zeta.imag == 0):
        raise ContourError("contour transform needs zeta off the real line")
    # the identity sums over every root; branch tags are not needed
    pts = np.concatenate([preimage_roots(rmap, z) for z in zeta])
    rows = offaxis_rows(pts, n).reshape(zeta.size, rmap.degree, n).sum(axis=1) - sub
    out = U @ rows.T
    return out[0] if single else out
