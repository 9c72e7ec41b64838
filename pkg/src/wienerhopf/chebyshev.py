"""Chebyshev grids of the second kind, transforms and Clenshaw-Curtis weights.

Points are stored in ascending order, ``x[0] = -1`` and ``x[-1] = +1``.
"""

from functools import lru_cache

import numpy as np


def chebyshev_points(n: int) -> np.ndarray:
    """Chebyshev points of the second kind in ascending order.

    Parameters
    ----------
    n : int
        Number of points, at least 2.

    Returns
    -------
    ndarray of shape (n,)
        ``cos((n-1-q) pi / (n-1))`` for ``q = 0..n-1``.

    Notes
    -----
    The sine form is used so that the grid is exactly antisymmetric and
    contains 0 exactly when ``n`` is odd.
    """
    if n < 2:
        raise ValueError(f"need at least 2 Chebyshev points, got n={n}")
    m = n - 1
    j = np.arange(-m, m + 1, 2)
    return np.sin(np.pi * j / (2 * m))


@lru_cache(maxsize=32)
def _transform_matrix(n: int) -> np.ndarray:
    m = n - 1
    k = np.arange(n)[:, None]
    q = np.arange(n)[None, :]
    # theta_q = (m - q) pi / m; reduce k*(m-q) mod 2m before the cosine
    arg = (k * (m - q)) % (2 * m)
    F = (2.0 / m) * np.cos(np.pi * arg / m)
    F[:, 0] *= 0.5
    F[:, -1] *= 0.5
    F[0, :] *= 0.5
    F[-1, :] *= 0.5
    F.setflags(write=False)
    return F


def transform_matrix(n: int) -> np.ndarray:
    """Dense matrix ``F`` mapping grid values to Chebyshev coefficients."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return _transform_matrix(n)


def inverse_transform_matrix(n: int) -> np.ndarray:
    """Matrix ``[T_k(x_q)]`` mapping coefficients back to grid values."""
    x = chebyshev_points(n)
    return chebyshev_vandermonde(x, n)


def chebyshev_vandermonde(x, n: int) -> np.ndarray:
    """Rows ``[T_0(x), ..., T_{n-1}(x)]`` by the three-term recurrence.

    Works for complex ``x``; the last axis of the result indexes ``k``.
    """
    x = np.asarray(x)
    dtype = np.result_type(x.dtype, float)
    T = np.empty(x.shape + (n,), dtype=dtype)
    T[..., 0] = 1.0
    if n > 1:
        T[..., 1] = x
    for k in range(1, n - 1):
        T[..., k + 1] = 2 * x * T[..., k] - T[..., k - 1]
    return T


def values_to_coeffs(values) -> np.ndarray:
    """Chebyshev coefficients of the interpolant through grid samples.

    Parameters
    ----------
    values : array_like, shape (..., n)
        Samples at ``chebyshev_points(n)``. Leading axes are batched.

    Returns
    -------
    ndarray
        Coefficients ``U_k`` with the same shape as ``values``.
    """
    values = np.asarray(values)
    n = values.shape[-1]
    if n < 2:
        raise ValueError("need at least two samples")
    return values @ transform_matrix(n).T


def coeffs_to_values(coeffs) -> np.ndarray:
    """Inverse of :func:`values_to_coeffs`."""
    coeffs = np.asarray(coeffs)
    return coeffs @ inverse_transform_matrix(coeffs.shape[-1]).T


def eval_series(coeffs, x):
    """Evaluate ``sum_k U_k T_k(x)`` by Clenshaw's recurrence.

    Parameters
    ----------
    coeffs : array_like, shape (n,)
    x : scalar or array_like
        Real or complex evaluation points.
    """
    c = np.asarray(coeffs)
    x = np.asarray(x)
    if c.size == 0:
        return np.zeros_like(x, dtype=complex)
    b1 = np.zeros(np.broadcast(x, c[0]).shape, dtype=np.result_type(x, c, float))
    b2 = np.zeros_like(b1)
    for ck in c[:0:-1]:
        b1, b2 = 2 * x * b1 - b2 + ck, b1
    out = x * b1 - b2 + c[0]
    return out if out.ndim else out[()]


def chebyshev_moments(n: int) -> np.ndarray:
    """Integrals ``m_k`` of ``T_k`` over [-1, 1] for ``k < n``."""
    k = np.arange(n)
    m = np.zeros(n)
    even = k % 2 == 0
    m[even] = 2.0 / (1.0 - k[even] ** 2)
    return m


def clenshaw_curtis_weights(n: int) -> np.ndarray:
    """Clenshaw-Curtis weights on the ascending second-kind grid.

    >>> clenshaw_curtis_weights(3)
    array([0.33333333, 1.33333333, 0.33333333])
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return chebyshev_moments(n) @ transform_matrix(n)
