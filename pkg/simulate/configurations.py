"""
Finite windows of Poisson configurations and their Radon-Nikodym cocycle.

For the shift by n the log-derivative at omega is
    sum_k (a_k - a_{k-n}) + omega_k (eps_{k-n} - eps_k),
the log of prod_k kappa_{k-n}(omega_k) / kappa_k(omega_k).
"""
import logging
import math

import numpy as np
from scipy import signal

from .exceptions import ExperimentRefused, WindowCoverageError
from .rng import as_generator

logger = logging.getLogger(__name__)

WINDOW_TOL = 1e-2


class ConfigurationWindow:
    """omega_k for k in [offset, offset + len(counts))."""

    __slots__ = ('offset', 'counts')

    def __init__(self, offset, counts):
        counts = np.asarray(counts)
        if counts.ndim != 1 or (counts.size and (counts.min() < 0 or not np.issubdtype(counts.dtype, np.integer))):
            raise ValueError('counts must be a sequence of nonnegative integers')
        self.offset = int(offset)
        self.counts = counts.astype(np.int64)
        self.counts.setflags(write=False)

    def __len__(self):
        return len(self.counts)

    def __eq__(self, other):
        if not isinstance(other, ConfigurationWindow):
            return NotImplemented
        return self.offset == other.offset and np.array_equal(self.counts, other.counts)

    def __repr__(self):
        return f'ConfigurationWindow(offset={self.offset}, len={len(self)})'

    @property
    def end(self):
        return self.offset + len(self.counts)

    def indices(self):
        return np.arange(self.offset, self.end)

    def covers(self, lo, hi):
        """Whether every k in [lo, hi] is inside the window."""
        return self.offset <= lo and hi < self.end

    def shift(self, n):
        """The window of T*^n omega: omega'_j = omega_{j+n}."""
        return ConfigurationWindow(self.offset - n, self.counts)


def window_for(profile, n, tol=WINDOW_TOL):
    """Half-open window [lo, hi) covering the support of the shift by n, or None."""
    support = profile.rn_support(n, tol)
    if support is None:
        return None
    lo, hi = support
    return lo, hi + 1


def sample_configuration(profile, window, rng):
    lo, hi = window
    if not lo < hi:
        raise ExperimentRefused(f'window must satisfy lo < hi, got [{lo}, {hi})')
    generator = as_generator(rng)
    counts = generator.poisson(profile.intensities(np.arange(lo, hi)))
    return ConfigurationWindow(lo, counts)


def _require_coverage(profile, omega, n, tol):
    support = profile.rn_support(n, tol)
    if support is None:
        return False
    if not omega.covers(*support):
        raise WindowCoverageError(
            f'window [{omega.offset}, {omega.end}) misses the shift-{n} support [{support[0]}, {support[1]}]',
            support=support, window=(omega.offset, omega.end),
        )
    return True


def log_rn_derivative(profile, omega, n, tol=WINDOW_TOL):
    if int(n) != n or n < 0:
        raise ExperimentRefused(f'shift must be a nonnegative integer, got {n}')
    if n == 0 or not _require_coverage(profile, omega, int(n), tol):
        return 0.0
    ks = omega.indices()
    family = profile.epsilon
    drift = profile.intensities(ks) - profile.intensities(ks - n)
    jumps = omega.counts * (family.epsilon(ks - n) - family.epsilon(ks))
    return math.fsum(np.concatenate([drift, jumps]))


def log_rn_series(profile, omega, N, tol=WINDOW_TOL):
    """log_rn_derivative for n = 1..N in one correlation pass."""
    if int(N) != N or N < 1:
        raise ExperimentRefused(f'N must be a positive integer, got {N}')
    N = int(N)
    if not _require_coverage(profile, omega, N, tol):
        return np.zeros(N)
    # eps over [offset - N, end); entry N - n + i lines up with omega_{offset + i} shifted by n
    ks = np.arange(omega.offset - N, omega.end)
    eps = profile.epsilon.epsilon(ks)
    counts = omega.counts.astype(float)
    shifted = signal.correlate(eps, counts, mode='valid', method='fft')[::-1][1:]
    own = float(counts @ eps[N:])
    prefix = np.concatenate([[0.0], np.cumsum(np.expm1(eps))])
    L = len(counts)
    starts = N - np.arange(1, N + 1)
    drift = profile.amplitude * ((prefix[N + L] - prefix[N]) - (prefix[starts + L] - prefix[starts]))
    return drift + shifted - own
