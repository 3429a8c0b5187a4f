"""Link-level channel primitives.

Covers the large-scale pieces (power-law distance loss, lognormal
shadowing), small-scale Rayleigh fading matrices, and the effective-gain
distribution seen by each stream after zero-forcing reception.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import ParameterError

__all__ = [
    "ChannelParams",
    "db_to_linear",
    "linear_to_db",
    "path_gain",
    "sample_shadowing",
    "mean_shadowing",
    "sample_fading_power",
    "sample_fading_matrix",
    "zf_gain_pdf",
    "zf_gain_sample",
]

_LN10_OVER_10 = np.log(10.0) / 10.0


@dataclass(frozen=True)
class ChannelParams:
    """Propagation constants.

    Parameters
    ----------
    beta : float
        Linear gain at unit distance (configure in dB externally, convert
        once with :func:`db_to_linear`).
    alpha : float
        Path-loss exponent.  Must exceed 2 or planar interference sums
        diverge.
    sigma_s_db : float
        Shadowing standard deviation in dB.
    """

    beta: float
    alpha: float
    sigma_s_db: float

    def __post_init__(self):
        if self.beta <= 0:
            raise ParameterError(f"beta must be positive, got {self.beta}")
        if self.alpha <= 2:
            raise ParameterError(f"alpha must exceed 2, got {self.alpha}")
        if self.sigma_s_db < 0:
            raise ParameterError(f"sigma_s_db must be nonnegative, got {self.sigma_s_db}")


def db_to_linear(x_db):
    return np.power(10.0, np.asarray(x_db, dtype=float) / 10.0)[()]


def linear_to_db(x):
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr <= 0):
        raise ParameterError("dB conversion needs positive values")
    return (10.0 * np.log10(x_arr))[()]


def path_gain(params: ChannelParams, distance):
    """Deterministic power loss ``beta * distance**(-alpha)``; vectorized over distance."""
    d = np.asarray(distance, dtype=float)
    if np.any(d <= 0):
        raise ParameterError("distance must be positive")
    return (params.beta * d**-params.alpha)[()]


def sample_shadowing(sigma_s_db: float, rng: np.random.Generator, size=None):
    """Lognormal shadowing factors ``10**(s/10)`` with ``s ~ N(0, sigma_s_db**2)``."""
    if sigma_s_db < 0:
        raise ParameterError(f"sigma_s_db must be nonnegative, got {sigma_s_db}")
    s = rng.normal(0.0, sigma_s_db, size)
    return np.power(10.0, s / 10.0)


def mean_shadowing(sigma_s_db: float) -> float:
    """Mean of the lognormal shadowing factor: ``exp((sigma_s_db * ln10 / 10)**2 / 2)``."""
    if sigma_s_db < 0:
        raise ParameterError(f"sigma_s_db must be nonnegative, got {sigma_s_db}")
    mu = sigma_s_db * _LN10_OVER_10
    return float(np.exp(mu**2 / 2.0))


def sample_fading_power(rng: np.random.Generator, size=None):
    """Squared-envelope Rayleigh fading: unit-mean exponential power gains."""
    return rng.exponential(1.0, size)


def sample_fading_matrix(n_rows: int, n_cols: int, rng: np.random.Generator) -> np.ndarray:
    """Rayleigh fading matrix with i.i.d. unit-variance complex Gaussian entries.

    Real and imaginary parts each carry variance 1/2 so the per-entry power
    E|h|^2 equals one.
    """
    if n_rows < 1 or n_cols < 1:
        raise ParameterError(f"matrix dimensions must be positive, got {n_rows}x{n_cols}")
    re = rng.standard_normal((n_rows, n_cols))
    im = rng.standard_normal((n_rows, n_cols))
    return (re + 1j * im) / np.sqrt(2.0)


def zf_gain_pdf(ell, n_t: int, s: int):
    """Density of the per-stream effective power gain after zero forcing.

    With ``n_t`` receive antennas spatially nulling ``s - 1`` co-scheduled
    streams, the surviving gain is Gamma-distributed with shape
    ``n_t - s + 1`` and unit rate.  Vectorized over ``ell``.
    """
    if s < 1 or n_t < s:
        raise ParameterError(f"need n_t >= s >= 1, got n_t={n_t}, s={s}")
    ell_arr = np.asarray(ell, dtype=float)
    if np.any(ell_arr < 0):
        raise ParameterError("gain argument must be nonnegative")
    return stats.gamma.pdf(ell_arr, a=n_t - s + 1)[()]


def zf_gain_sample(h: np.ndarray, k: int) -> float:
    """Effective power gain of stream ``k`` under zero-forcing reception.

    Equals the reciprocal of the k-th diagonal entry of ``(h h^+)^{-1}``
    for an ``s x n_t`` fading matrix ``h`` with ``n_t >= s``.  A singular
    Gram matrix (probability zero under the fading model) surfaces as
    ``numpy.linalg.LinAlgError``; callers drawing random matrices should
    redraw.
    """
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] > h.shape[1]:
        raise ParameterError(f"need an s x n_t matrix with n_t >= s, got shape {h.shape}")
    s = h.shape[0]
    if not 0 <= k < s:
        raise ParameterError(f"stream index {k} out of range for s={s}")
    gram = h @ h.conj().T
    e_k = np.zeros(s)
    e_k[k] = 1.0
    inv_kk = np.linalg.solve(gram, e_k)[k].real
    return float(1.0 / inv_kk)
