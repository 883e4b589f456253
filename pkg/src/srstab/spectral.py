"""Fourier atoms, sensitivity matrix, and Fisher information of the spike model.

The observation is the vector of the first N = 2n+1 trigonometric moments
of a spike train on the torus, plus white Gaussian noise.  The relevant
linear algebra lives in the N x 2r sensitivity matrix W(tau) whose columns
are the unit-norm Fourier atoms and their normalized derivatives; the
Fisher information is a congruence of its Gram matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .extremal import Approximant, CUBED, DecayTooSlow


class DuplicateLocation(ValueError):
    """Two spike locations coincide on the torus."""


class SingularFisher(RuntimeError):
    """Fisher matrix too ill-conditioned for a CRLB evaluation."""


@dataclass(frozen=True)
class ProblemSize:
    """Number of observed moments N = 2n+1 and its normalization constant."""
    N: int

    def __post_init__(self):
        if self.N < 3 or self.N % 2 == 0:
            raise ValueError("N must be an odd integer >= 3")

    @property
    def n(self) -> int:
        return (self.N - 1) // 2

    @property
    def c_norm(self) -> float:
        """sqrt(3 / (pi^2 (N-1)(N+1))); makes the derivative atom unit norm."""
        return math.sqrt(3.0 / (math.pi**2 * (self.N - 1) * (self.N + 1)))


@dataclass
class SpikeConfig:
    """Spike amplitudes and locations with dynamic range kappa.

    Amplitude moduli are normalized to lie in [1, kappa]; locations live
    on [0, 1) and must be pairwise distinct.
    """
    tau: np.ndarray
    c: np.ndarray
    kappa: float

    def __post_init__(self):
        self.tau = np.atleast_1d(np.asarray(self.tau, dtype=float))
        self.c = np.atleast_1d(np.asarray(self.c, dtype=complex))
        if self.tau.size != self.c.size:
            raise ValueError("amplitude and location vectors differ in length")
        if self.tau.size < 1:
            raise ValueError("at least one spike is required")
        if np.any(self.tau < 0.0) or np.any(self.tau >= 1.0):
            raise ValueError("locations must lie in [0, 1)")
        if self.kappa < 1.0:
            raise ValueError("kappa must be >= 1")
        mags = np.abs(self.c)
        if np.any(mags < 1.0 - 1e-9) or np.any(mags > self.kappa + 1e-9):
            raise ValueError("amplitude moduli must lie in [1, kappa]")
        if self.r >= 2 and wraparound_separation(self.tau) == 0.0:
            raise DuplicateLocation("spike locations must be pairwise distinct")

    @property
    def r(self) -> int:
        return self.tau.size


@dataclass
class SensitivityMatrix:
    """W(tau) = [V0(tau), V1(tau)], an N x 2r matrix with unit-norm columns."""
    entries: np.ndarray
    size: ProblemSize
    r: int


@dataclass
class FisherMatrix:
    """2r x 2r Hermitian PSD Fisher information for noise variance sigma2."""
    entries: np.ndarray
    sigma2: float

    def __post_init__(self):
        a = np.asarray(self.entries)
        scale = max(1.0, float(np.abs(a).max(initial=0.0)))
        if np.abs(a - a.conj().T).max(initial=0.0) > 1e-12 * scale:
            raise ValueError("Fisher matrix must be Hermitian")


def fourier_vector(size: ProblemSize, tau: float, derivative: bool = False) -> np.ndarray:
    """Unit-norm Fourier atom at tau, or its normalized derivative.

    Entry k (stored at row k + n, k = -n..n) is e^{-i 2 pi k tau}/sqrt(N);
    the derivative version carries the extra factor C_N * (-i 2 pi k).
    """
    if not 0.0 <= tau < 1.0:
        raise ValueError("tau must lie in [0, 1)")
    k = np.arange(-size.n, size.n + 1)
    v = np.exp(-2j * np.pi * k * tau) / math.sqrt(size.N)
    if derivative:
        v = size.c_norm * (-2j * np.pi * k) * v
    return v


def wraparound_separation(tau: np.ndarray) -> float:
    """Minimal pairwise distance on the torus; +inf for a single point."""
    tau = np.atleast_1d(np.asarray(tau, dtype=float))
    if tau.size < 2:
        return math.inf
    d = np.abs(tau[:, None] - tau[None, :])
    d = np.minimum(d, 1.0 - d)
    iu = np.triu_indices(tau.size, k=1)
    return float(d[iu].min())


def sensitivity(size: ProblemSize, tau: np.ndarray) -> SensitivityMatrix:
    """Assemble W(tau) column by column from the Fourier atoms."""
    tau = np.atleast_1d(np.asarray(tau, dtype=float))
    r = tau.size
    if r > size.n:
        raise ValueError(f"r={r} exceeds n={size.n}; the model is not identifiable")
    if np.any(tau < 0.0) or np.any(tau >= 1.0):
        raise ValueError("locations must lie in [0, 1)")
    if r >= 2 and wraparound_separation(tau) == 0.0:
        raise DuplicateLocation("spike locations must be pairwise distinct")
    k = np.arange(-size.n, size.n + 1)
    phases = np.exp(-2j * np.pi * k[:, None] * tau[None, :])
    v0 = phases / math.sqrt(size.N)
    v1 = size.c_norm * (-2j * np.pi * k)[:, None] * v0
    return SensitivityMatrix(entries=np.hstack([v0, v1]), size=size, r=r)


def hermitian_part(a: np.ndarray) -> np.ndarray:
    """(A + A^H)/2; guards eigensolves against rounding asymmetry."""
    return 0.5 * (a + a.conj().T)


def gram_extremal(matrix: SensitivityMatrix) -> tuple:
    """Extremal eigenvalues of W^H W, i.e. squared extremal singular values of W.

    Works on the 2r x 2r Gram matrix so the cost is O(N r^2) assembly plus
    an O(r^3) Hermitian eigensolve, never a decomposition of the tall matrix.
    """
    w = matrix.entries
    gram = hermitian_part(w.conj().T @ w)
    eigs = np.linalg.eigvalsh(gram)
    return float(eigs[0]), float(eigs[-1])


def fim_from_gram(gram: np.ndarray, c: np.ndarray, sigma2: float) -> FisherMatrix:
    """Fisher matrix from a precomputed Gram of W and the amplitude vector."""
    if not sigma2 > 0:
        raise ValueError("sigma2 must be positive")
    c = np.atleast_1d(np.asarray(c, dtype=complex))
    d = np.concatenate([np.ones(c.size, dtype=complex), c])
    entries = hermitian_part(np.outer(d.conj(), d) * gram) / sigma2
    return FisherMatrix(entries=entries, sigma2=float(sigma2))


def fim(size: ProblemSize, config: SpikeConfig, sigma2: float) -> FisherMatrix:
    """J(theta) = sigma^-2 diag(1, c)^H W^H W diag(1, c)."""
    if config.r > size.n:
        raise ValueError(f"r={config.r} exceeds n={size.n}")
    w = sensitivity(size, config.tau).entries
    gram = hermitian_part(w.conj().T @ w)
    return fim_from_gram(gram, config.c, sigma2)


def fim_extremal_eigs(j: FisherMatrix) -> tuple:
    """(lambda_min, lambda_max) of the Hermitian Fisher matrix."""
    eigs = np.linalg.eigvalsh(hermitian_part(j.entries))
    return float(eigs[0]), float(eigs[-1])


def crlb_linear_form(j: FisherMatrix, q: np.ndarray) -> float:
    """Cramer-Rao bound q^H J^-1 q of the linear form q^H theta.

    Uses a Cholesky factorization; refuses nearly singular Fisher matrices
    (lambda_min <= 1e-12 lambda_max), which signal a degenerate geometry
    rather than a numerical issue worth papering over.
    """
    q = np.atleast_1d(np.asarray(q, dtype=complex))
    if not np.any(q):
        raise ValueError("q must be nonzero")
    lam_min, lam_max = fim_extremal_eigs(j)
    if lam_min <= 1e-12 * lam_max:
        raise SingularFisher(
            f"lambda_min/lambda_max = {lam_min/lam_max if lam_max else 0.0:.3e}")
    chol = np.linalg.cholesky(hermitian_part(j.entries))
    y = np.linalg.solve(chol, q)
    return float(np.real(np.vdot(y, y)))


def synth_signal(size: ProblemSize, config: SpikeConfig) -> np.ndarray:
    """Noiseless moment vector V0(tau) c."""
    w = sensitivity(size, config.tau)
    return w.entries[:, :config.r] @ config.c


def poisson_series_check(size: ProblemSize, approximant: Approximant,
                         tau: np.ndarray, l: int, l2: int, p: int,
                         K: int) -> tuple:
    """Truncated lattice series against its Poisson-summation closed form.

    Computes sum_{k=-K..K} X(k Delta) (i 2 pi k)^p e^{-i 2 pi k (tau_l - tau_l2)}
    for the cubed minorant/majorant X, together with the value the Poisson
    summation formula predicts: Delta^-(p+1) X^(p)(0) when l == l2 (the
    first transform derivative vanishing by evenness) and 0 otherwise.
    Returns (series_value, closed_form).
    """
    if approximant.order != CUBED:
        raise DecayTooSlow(
            f"series check needs the cubed decay rate, got order={approximant.order!r}")
    if p not in (0, 1, 2):
        raise ValueError("p must be 0, 1 or 2")
    tau = np.atleast_1d(np.asarray(tau, dtype=float))
    delta = wraparound_separation(tau)
    if size.N * delta < approximant.alpha - 1e-12:
        raise ValueError("N * separation must be at least the approximant width")
    if K < 10.0 / delta:
        raise ValueError("truncation K too small for this separation")
    shift = tau[l] - tau[l2]
    total = 0.0 + 0.0j
    if p == 0:
        total += approximant.value(0.0)
    chunk = 1 << 20
    for start in range(1, K + 1, chunk):
        k = np.arange(start, min(start + chunk, K + 1), dtype=float)
        xv = approximant.value(k * delta)
        ph = np.exp(-2j * np.pi * k * shift)
        factor = (2j * np.pi * k) ** p
        total += np.sum(xv * factor * ph)
        total += np.sum(xv * (-factor if p == 1 else factor) * np.conj(ph))
    m0, m2 = approximant.moments()
    if l == l2:
        deriv0 = {0: m0, 1: 0.0, 2: m2}[p]
        closed = complex(delta ** (-(p + 1)) * deriv0)
    else:
        closed = 0.0 + 0.0j
    return complex(total), closed
