"""Bound curves for the squared extremal singular values of W(tau).

For any admissible minorant X of the width-alpha box, the squared smallest
singular value of the sensitivity matrix is at least

    min( X^(0) / alpha,  -(3/pi^2) X''^(0) / alpha^3 )

and symmetrically for the largest singular value with a majorant and a max.
Instantiating both with the cube-transformed approximants gives computable
curves h_-(alpha), h_+(alpha); the smallest alpha with h_- > 0 is the
separation threshold above which the Fisher information stays stable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .extremal import Approximant, CUBED, MAJORANT, MINORANT


class NoSignChange(RuntimeError):
    """The lower bound curve does not cross zero on the search bracket."""


@dataclass
class BoundCurve:
    """Tabulated alpha -> (h_-, h_+)."""
    alphas: np.ndarray
    h_minus: np.ndarray
    h_plus: np.ndarray


@lru_cache(maxsize=None)
def _g_moments(side: str, alpha: float, quad_tol: float) -> tuple:
    # value-deterministic, so a shared cache is safe under concurrency
    return Approximant(side=side, alpha=alpha, order=CUBED,
                       quad_tol=quad_tol).moments()


def h_bound(side: str, alpha: float, quad_tol: float = 1e-10) -> float:
    """Evaluate h_- (side="minorant") or h_+ (side="majorant") at alpha.

    The minorant bound can be negative for small alpha, which consumers
    read as "no guarantee"; the majorant bound is always >= 1.
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    m0, m2 = _g_moments(side, float(alpha), float(quad_tol))
    term0 = m0 / alpha
    term2 = -3.0 * m2 / (math.pi**2 * alpha**3)
    return min(term0, term2) if side == MINORANT else max(term0, term2)


def bound_curve(alpha_min: float, alpha_max: float, steps: int,
                quad_tol: float = 1e-10) -> BoundCurve:
    """Tabulate both bound functions on a uniform alpha grid."""
    if not 0 < alpha_min < alpha_max:
        raise ValueError("need 0 < alpha_min < alpha_max")
    if steps < 2:
        raise ValueError("need at least 2 grid points")
    alphas = np.linspace(alpha_min, alpha_max, steps)
    h_minus = np.array([h_bound(MINORANT, a, quad_tol) for a in alphas])
    h_plus = np.array([h_bound(MAJORANT, a, quad_tol) for a in alphas])
    return BoundCurve(alphas=alphas, h_minus=h_minus, h_plus=h_plus)


def stability_threshold(tolerance: float, quad_tol: float = 1e-10) -> float:
    """Smallest alpha in [2, 6] with h_-(alpha) > 0, by bisection.

    Monotonicity of h_- justifies bisection; the bracket ends are known
    sides of the transition (instability below 2, stability by 3.54ish).
    """
    if not 1e-6 <= tolerance <= 1e-2:
        raise ValueError("tolerance must lie in [1e-6, 1e-2]")
    lo, hi = 2.0, 6.0
    if not (h_bound(MINORANT, lo, quad_tol) <= 0.0 < h_bound(MINORANT, hi, quad_tol)):
        raise NoSignChange("h_- does not change sign on [2, 6]")
    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        if h_bound(MINORANT, mid, quad_tol) > 0.0:
            hi = mid
        else:
            lo = mid
    return hi


def classical_v0_bounds(alpha: float) -> tuple:
    """(1 - 1/alpha, 1 + 1/alpha): the classical squared singular value
    bounds for the plain Vandermonde factor V0 at separation alpha."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    return 1.0 - 1.0 / alpha, 1.0 + 1.0 / alpha
