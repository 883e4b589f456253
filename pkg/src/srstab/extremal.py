"""Bandlimited approximants of the box indicator function.

The building block is the extremal 1-bandlimited majorant of the sign
function.  Shifted combinations of it give a minorant/majorant pair for
the indicator of [-alpha/2, alpha/2] whose tails decay like t^-2; cubing
a rescaled copy of that pair yields approximants with t^-6 tails, an
even profile, and therefore two finite Fourier moments at the origin.

All evaluators accept a float or a numpy array and vectorize over the
array.  Everything here is pure and deterministic, so concurrent
read-only use is safe; moment caching is idempotent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .quadrature import integrate_moment_pair

MINORANT = "minorant"
MAJORANT = "majorant"
SELBERG = "selberg"
CUBED = "cubed"

ArrayLike = Union[float, np.ndarray]


class DecayTooSlow(ValueError):
    """Second Fourier moment requested for a function with a divergent t^2 tail."""


# Asymptotic tail of psi'(y): 1/y + 1/(2y^2) + sum B_{2k} / y^{2k+1}.
# Truncated after B_14; the first omitted term is < 3e-16 for y >= 11.
_BERNOULLI = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
)

_SHIFT = 10


def trigamma(x: ArrayLike) -> ArrayLike:
    """psi'(x) = sum_{k>=0} (x+k)^-2 for x > 0 (absolute error ~1e-14).

    Forward recurrence lifts the argument by 10, then the Bernoulli
    asymptotic series finishes the job.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise ValueError("trigamma requires a positive argument")
    acc = np.zeros_like(x)
    for k in range(_SHIFT):
        acc += 1.0 / (x + k) ** 2
    z = x + _SHIFT
    u = 1.0 / (z * z)
    poly = np.zeros_like(x)
    for c in reversed(_BERNOULLI):
        poly = u * poly + c
    out = acc + 1.0 / z + 0.5 * u + (u / z) * poly
    return out if out.ndim else float(out)


def _phi(x: np.ndarray) -> np.ndarray:
    """sum_{k>=1} 1/((x+k-1)(x+k)^2) = 1/x - psi'(1+x), for x > 0.

    Summing the positive representation term by term (rather than
    subtracting two nearly equal quantities) keeps the result positive
    in floating point, which in turn keeps the sign majorant above sgn
    everywhere, including at its integer interpolation points.
    """
    acc = np.zeros_like(x)
    for k in range(1, _SHIFT + 1):
        acc += 1.0 / ((x + k - 1.0) * (x + k) ** 2)
    z = x + _SHIFT
    y = z + 1.0
    u = 1.0 / (y * y)
    poly = np.zeros_like(x)
    for c in reversed(_BERNOULLI):
        poly = u * poly + c
    # 1/z - psi'(1+z) with the 1/z - 1/y difference taken analytically
    tail = 1.0 / (z * y) - 0.5 * u - (u / y) * poly
    return acc + tail


def _fejer(x: np.ndarray) -> np.ndarray:
    # (sin(pi x) / (pi x))^2 with the removable singularity at 0
    return np.sinc(x) ** 2


def _beurling_nonneg(x: np.ndarray) -> np.ndarray:
    """Majorant of sgn on x >= 0: 1 + 2 (sin(pi x)/pi)^2 * phi(x)."""
    out = np.empty_like(x)
    small = x < 1e-9
    if np.any(small):
        out[small] = 1.0 + 2.0 * x[small]
    rest = ~small
    if np.any(rest):
        xr = x[rest]
        s = np.sin(np.pi * xr) / np.pi
        out[rest] = 1.0 + 2.0 * s * s * _phi(xr)
    return out


def beurling(x: ArrayLike) -> ArrayLike:
    """The extremal 1-bandlimited majorant of the sign function.

    Satisfies B(x) >= sgn(x) everywhere (also in floating point), equals
    sgn at the nonzero integers, B(0) = 1, and the excess integrates to
    exactly 1 over the real line.  Negative arguments use the exact
    reflection B(-x) = 2 (sin(pi x)/(pi x))^2 - B(x).
    """
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.empty_like(arr)
    neg = arr < 0.0
    pos = ~neg
    if np.any(pos):
        out[pos] = _beurling_nonneg(arr[pos])
    if np.any(neg):
        y = -arr[neg]
        out[neg] = 2.0 * _fejer(y) - _beurling_nonneg(y)
    return float(out[0]) if scalar else out


def box_indicator(alpha: float, t: ArrayLike) -> ArrayLike:
    """Indicator of [-alpha/2, alpha/2], endpoints included."""
    arr = np.asarray(t, dtype=float)
    out = np.where(np.abs(arr) <= alpha / 2.0, 1.0, 0.0)
    return float(out) if arr.ndim == 0 else out


def _check_side(side: str) -> None:
    if side not in (MINORANT, MAJORANT):
        raise ValueError(f"side must be {MINORANT!r} or {MAJORANT!r}, got {side!r}")


def selberg_box(side: str, alpha: float, t: ArrayLike) -> ArrayLike:
    """1-bandlimited minorant/majorant of the box of width alpha.

    Classic shifted-sign construction: the majorant averages B at the two
    box edges, the minorant uses the reflected pair.  Integrals over the
    line are alpha + 1 (majorant) and alpha - 1 (minorant); the tails
    decay like t^-2 only, so these functions have no finite second
    Fourier moment.
    """
    _check_side(side)
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    half = alpha / 2.0
    arr = np.asarray(t, dtype=float)
    if side == MAJORANT:
        out = 0.5 * (beurling(arr + half) + beurling(half - arr))
    else:
        out = -0.5 * (beurling(-half - arr) + beurling(arr - half))
    return float(out) if arr.ndim == 0 else out


def g_approximant(side: str, alpha: float, t: ArrayLike) -> ArrayLike:
    """Cube-transformed box approximant: (B_{alpha/3}^side(t/3))^3.

    Cubing preserves the bandwidth (support of the spectrum triples from
    [-1/3, 1/3] back to [-1, 1]) and the side of the approximation, while
    boosting the tail decay to t^-6.  By evenness its first Fourier
    derivative vanishes at the origin.
    """
    arr = np.asarray(t, dtype=float)
    out = selberg_box(side, alpha / 3.0, arr / 3.0) ** 3
    return float(out) if arr.ndim == 0 else out


@dataclass
class QuadratureMeta:
    """Provenance of a moment computation."""
    half_width: float
    panel_tol: float
    tail_bound: float
    npanels: int


@dataclass
class BoxFunction:
    """The box indicator itself, evaluable like an approximant."""
    alpha: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")

    def value(self, t: ArrayLike) -> ArrayLike:
        return box_indicator(self.alpha, t)


@dataclass
class Approximant:
    """A box minorant/majorant together with its Fourier moments at zero.

    ``moment0`` is the integral over the line (the transform at 0) and
    ``moment2`` the second derivative of the transform at 0, i.e.
    -4 pi^2 * integral of t^2 f(t).  Both are filled in lazily on the
    first ``moments()`` call and cached; recomputation is idempotent.
    """
    side: str
    alpha: float
    order: str = CUBED
    quad_tol: float = 1e-10
    moment0: Optional[float] = None
    moment2: Optional[float] = None
    quadrature_meta: Optional[QuadratureMeta] = None

    def __post_init__(self):
        _check_side(self.side)
        if self.order not in (SELBERG, CUBED):
            raise ValueError(f"order must be {SELBERG!r} or {CUBED!r}")
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if not self.quad_tol > 0:
            raise ValueError("quad_tol must be positive")

    def value(self, t: ArrayLike) -> ArrayLike:
        if self.order == CUBED:
            return g_approximant(self.side, self.alpha, t)
        return selberg_box(self.side, self.alpha, t)

    def moments(self) -> tuple:
        if self.moment0 is None:
            m0, m2, meta = _cubed_moments(self)
            self.moment0 = m0
            self.moment2 = m2
            self.quadrature_meta = meta
        return self.moment0, self.moment2


def _cubed_tail_bounds(alpha: float, half_width: float) -> tuple:
    """Certified truncation bounds for the two moment integrals.

    From B(x) - sgn(x) <= 3 sin^2(pi x) / (pi^2 (|x|-1)^2) one gets
    |G(t)| <= 5832 / (pi^6 (|t| - alpha/2 - 3)^6) outside the box, which
    integrates in closed form.  Returns (tail of integral f,
    tail of |second moment| already scaled by 4 pi^2), both counting the
    two symmetric ends.
    """
    a = alpha / 2.0 + 3.0
    u = half_width - a
    if u <= 0:
        return math.inf, math.inf
    c = 5832.0 / math.pi**6
    tail0 = 2.0 * c / (5.0 * u**5)
    tail2 = 2.0 * c * (1.0 / (3.0 * u**3) + a / (2.0 * u**4) + a * a / (5.0 * u**5))
    return tail0, 4.0 * math.pi**2 * tail2


# Truncation target for the certified tails; panel refinement follows the
# caller-supplied tolerance, the truncation stays at least this tight.
_TAIL_TARGET = 1e-10


def _cubed_moments(approx: Approximant) -> tuple:
    if approx.order == SELBERG:
        raise DecayTooSlow(
            "t^-2 tails make the second moment of a plain box approximant divergent")
    alpha = approx.alpha
    target = min(_TAIL_TARGET, approx.quad_tol)
    half_width = max(64.0, 4.0 * (alpha / 2.0 + 3.0))
    while max(_cubed_tail_bounds(alpha, half_width)) > target:
        half_width *= 2.0
        if half_width > 2**26:
            raise RuntimeError("tail truncation width grew unreasonably large")
    f = lambda t: g_approximant(approx.side, alpha, t)
    i0, i2, npanels = integrate_moment_pair(f, -half_width, half_width, approx.quad_tol)
    meta = QuadratureMeta(
        half_width=half_width,
        panel_tol=approx.quad_tol,
        tail_bound=max(_cubed_tail_bounds(alpha, half_width)),
        npanels=npanels,
    )
    return i0, -4.0 * math.pi**2 * i2, meta


def moments(f) -> tuple:
    """Fourier moments (f^(0), f^''(0)) of an approximant descriptor.

    Accepts an :class:`Approximant` (cubed order only; the plain pair is
    refused because its second moment diverges) or a :class:`BoxFunction`,
    for which the quadrature runs exactly on the support interval.
    """
    if isinstance(f, BoxFunction):
        half = f.alpha / 2.0
        i0, i2, _ = integrate_moment_pair(f.value, -half, half, 1e-12,
                                          start_width=max(0.25, half / 8.0))
        return i0, -4.0 * math.pi**2 * i2
    if isinstance(f, Approximant):
        return f.moments()
    raise TypeError(f"unsupported approximant descriptor: {type(f)!r}")
