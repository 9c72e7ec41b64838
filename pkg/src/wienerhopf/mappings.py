"""Rational maps of [-1, 1] onto the real line and their inverse branches.

Two maps are provided::

    2-to-1:  M(x) = x / (1 - x^2)
    4-to-1:  M(x) = (x + x^3) / (1 - x^2)^2

Each real alpha has ``d`` preimages: one on the interval, one on the real
exterior and, for the 4-to-1 map, one on each unit semicircle.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import ClassificationError, ContourError


class MapKind(Enum):
    TWO_TO_ONE = "2to1"
    FOUR_TO_ONE = "4to1"


class Branch(Enum):
    INTERVAL = "interval"
    REAL_EXTERIOR = "real_exterior"
    UPPER_SEMICIRCLE = "upper_semicircle"
    LOWER_SEMICIRCLE = "lower_semicircle"


class Preimage(NamedTuple):
    branch: Branch
    value: complex
    infinite: bool = False


@dataclass(frozen=True)
class RationalMap:
    """Descriptor of a d-to-1 rational map.

    ``orientation[b]`` names the endpoint rows (``"L"`` for mu^L, ``"R"``
    for mu^R) used as the first and last rows of branch ``b``'s Cauchy
    block: the endpoint that branch ``b`` approaches as x -> -1 and x -> +1.
    """

    kind: MapKind
    degree: int
    branches: tuple
    orientation: dict = field(hash=False)

    @property
    def name(self) -> str:
        return self.kind.value


TWO_TO_ONE = RationalMap(
    MapKind.TWO_TO_ONE,
    2,
    (Branch.INTERVAL, Branch.REAL_EXTERIOR),
    {Branch.INTERVAL: ("L", "R"), Branch.REAL_EXTERIOR: ("R", "L")},
)

FOUR_TO_ONE = RationalMap(
    MapKind.FOUR_TO_ONE,
    4,
    (Branch.INTERVAL, Branch.REAL_EXTERIOR, Branch.UPPER_SEMICIRCLE, Branch.LOWER_SEMICIRCLE),
    {
        Branch.INTERVAL: ("L", "R"),
        Branch.REAL_EXTERIOR: ("L", "R"),
        Branch.UPPER_SEMICIRCLE: ("R", "L"),
        Branch.LOWER_SEMICIRCLE: ("R", "L"),
    },
)


def get_map(name) -> RationalMap:
    """Look up a map by ``"2to1"``/``"4to1"``, a :class:`MapKind` or a map."""
    if isinstance(name, RationalMap):
        return name
    kind = MapKind(name)
    return TWO_TO_ONE if kind is MapKind.TWO_TO_ONE else FOUR_TO_ONE


def _check_poles(x):
    if np.any((x == 1) | (x == -1)):
        raise ContourError("rational map has poles at x = -1 and x = +1")


def map_forward(rmap: RationalMap, x):
    """Evaluate ``M(x)``. ``1 - x^2`` is formed as ``(1-x)(1+x)``.

    Points with ``|x| > 1`` go through ``M(1/x) = M(x)`` (4-to-1) or
    ``M(1/x) = -M(x)`` (2-to-1) so that large exterior preimages do not
    overflow.
    """
    x = np.asarray(x)
    _check_poles(x)
    big = np.abs(x) > 1
    y = np.where(big, 1 / np.where(big, x, 1), x)
    s = (1 - y) * (1 + y)
    if rmap.kind is MapKind.TWO_TO_ONE:
        out = np.where(big, -1, 1) * y / s
    else:
        out = y * (1 + y * y) / (s * s)
    return out if out.ndim else out[()]


def map_derivative(rmap: RationalMap, x):
    """Analytic derivative ``M'(x)``."""
    x = np.asarray(x)
    _check_poles(x)
    s = (1 - x) * (1 + x)
    x2 = x * x
    if rmap.kind is MapKind.TWO_TO_ONE:
        out = (1 + x2) / (s * s)
    else:
        out = (1 + 6 * x2 + x2 * x2) / (s * s * s)
    return out if out.ndim else out[()]


def collocation_preimages(rmap: RationalMap, x):
    """Vectorized preimages of ``M(x)`` for interior grid points.

    Returns a list of ``(branch, values, infinite)`` triples where
    ``infinite`` masks points whose preimage is the point at infinity
    (the real-exterior branch at x = 0); ``values`` is 0 there.
    """
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) >= 1):
        raise ContourError("collocation preimages need interior points")
    zero = x == 0
    safe = np.where(zero, 1.0, x)
    out = [(Branch.INTERVAL, x.astype(complex), np.zeros(x.shape, bool))]
    if rmap.kind is MapKind.TWO_TO_ONE:
        ext = np.where(zero, 0.0, -1.0 / safe)
        out.append((Branch.REAL_EXTERIOR, ext.astype(complex), zero))
    else:
        ext = np.where(zero, 0.0, 1.0 / safe)
        out.append((Branch.REAL_EXTERIOR, ext.astype(complex), zero))
        # roots of t^2 + c t + 1 with c = 4x/(1+x^2), written without cancellation
        up = 1j * (1 + 1j * x) / (1 - 1j * x)
        none = np.zeros(x.shape, bool)
        out.append((Branch.UPPER_SEMICIRCLE, up, none))
        out.append((Branch.LOWER_SEMICIRCLE, np.conj(up), none.copy()))
    return out


def preimages_at_collocation(rmap: RationalMap, x_p: float) -> list:
    """Tagged preimages of ``M(x_p)`` for a single interior point.

    >>> [p.value for p in preimages_at_collocation(TWO_TO_ONE, 0.5)]
    [(0.5+0j), (-2+0j)]
    """
    res = []
    for branch, vals, inf in collocation_preimages(rmap, np.asarray([x_p])):
        res.append(Preimage(branch, complex(vals[0]), bool(inf[0])))
    return res


def _poly(rmap: RationalMap, alpha):
    # coefficients of M(x) = alpha cleared of denominators, highest power first
    if rmap.kind is MapKind.TWO_TO_ONE:
        return np.array([alpha, 1.0, -alpha], dtype=complex)
    return np.array([alpha, -1.0, -2 * alpha, -1.0, alpha], dtype=complex)


def preimage_roots(rmap: RationalMap, alpha: complex) -> np.ndarray:
    """Untagged roots of M(x) = alpha, polished by two Newton steps."""
    p = _poly(rmap, alpha)
    r = np.roots(p)
    dp = np.polyder(p)
    for _ in range(2):
        d = np.polyval(dp, r)
        ok = d != 0
        r[ok] = r[ok] - np.polyval(p, r[ok]) / d[ok]
    return r


def _classify_real(rmap: RationalMap, roots, tol=1e-8) -> list:
    tags = []
    for r in roots:
        if abs(r.imag) <= tol:
            tags.append(Branch.INTERVAL if abs(r.real) < 1 else Branch.REAL_EXTERIOR)
        elif rmap.kind is MapKind.FOUR_TO_ONE and abs(abs(r) - 1) <= tol:
            tags.append(Branch.UPPER_SEMICIRCLE if r.imag > 0 else Branch.LOWER_SEMICIRCLE)
        else:
            raise ClassificationError(f"root {r} is on no contour of the {rmap.name} map")
    if sorted(t.value for t in tags) != sorted(b.value for b in rmap.branches):
        raise ClassificationError(f"ambiguous branch assignment {tags}")
    return tags


def preimages_general(rmap: RationalMap, alpha: complex, steps: int = 64) -> list:
    """All ``d`` roots of ``M(x) = alpha`` with branch tags.

    Real ``alpha`` is classified by contour membership. For complex
    ``alpha`` the tags follow the roots by continuation along a straight
    segment from a real starting value.
    """
    alpha = complex(alpha)
    if alpha == 0 or not np.isfinite(alpha):
        raise ContourError("alpha must be finite and nonzero")
    scale = max(1.0, abs(alpha))
    if abs(alpha.imag) <= 1e-8 * scale:
        roots = preimage_roots(rmap, alpha.real)
        tags = _classify_real(rmap, roots)
        return [Preimage(t, complex(r)) for t, r in zip(tags, roots)]

    start = alpha.real if abs(alpha.real) > 1e-3 * abs(alpha) else abs(alpha)
    prev = preimage_roots(rmap, start)
    tags = _classify_real(rmap, prev)
    for s in np.linspace(0.0, 1.0, steps + 1)[1:]:
        cur = preimage_roots(rmap, start + s * (alpha - start))
        row, col = linear_sum_assignment(np.abs(prev[:, None] - cur[None, :]))
        prev = cur[col[np.argsort(row)]]
    return [Preimage(t, complex(r)) for t, r in zip(tags, prev)]


@dataclass(frozen=True)
class CollocationGrid:
    """Grid points, their images under the map and the rotated images.

    ``alpha`` and ``alpha_rotated`` hold NaN where ``infinite`` is set
    (the endpoints x = -1 and x = +1 map to infinity).
    """

    x: np.ndarray
    alpha: np.ndarray
    alpha_rotated: np.ndarray
    dalpha_dx: np.ndarray
    infinite: np.ndarray
    chi: float
    rmap: RationalMap

    @property
    def n(self) -> int:
        return self.x.size

    @property
    def interior(self) -> slice:
        return slice(1, -1)
