import logging
import math
from dataclasses import dataclass

import numpy as np

from intensity.conditions import UNDETERMINED, YES

from .exceptions import NotApplicableError

logger = logging.getLogger(__name__)

# exponent constant of the dissipativity series; twice the growth bound's 108
SERIES_CONSTANT = 216
GROWTH_CONSTANT = 108


@dataclass(frozen=True)
class DensityProfile:
    left: tuple
    right: tuple
    window: tuple = ()
    offset: int = 0

    def __post_init__(self):
        rows = [self.left, self.right, *self.window]
        widths = {len(row) for row in rows}
        if len(widths) != 1 or 0 in widths:
            raise NotApplicableError('densities must share one nonempty partition')
        if any(not (math.isfinite(x) and x > 0) for row in rows for x in row):
            raise NotApplicableError('densities must be strictly positive and finite')
        object.__setattr__(self, 'left', tuple(float(x) for x in self.left))
        object.__setattr__(self, 'right', tuple(float(x) for x in self.right))
        object.__setattr__(self, 'window', tuple(tuple(float(x) for x in row) for row in self.window))

    @classmethod
    def from_rows(cls, left, right, window=(), offset=0):
        return cls(tuple(left), tuple(right), tuple(tuple(row) for row in window), int(offset))

    @property
    def cells(self):
        return len(self.left)

    @property
    def end(self):
        """First index of the right tail."""
        return self.offset + len(self.window)

    def rows(self, ks):
        """Densities at cell indices ks as a (len(ks), cells) array."""
        ks = np.asarray(ks)
        table = np.array([self.left, *self.window, self.right])
        return table[np.clip(ks - self.offset + 1, 0, len(self.window) + 1)]


def l1_norm(rows):
    return np.mean(rows, axis=-1)


def chi(profile):
    return float(l1_norm(np.array(profile.right)) - l1_norm(np.array(profile.left)))


def sup_norm(profile):
    return float(np.max(l1_norm(np.array([profile.left, *profile.window, profile.right]))))


@dataclass(frozen=True)
class ContinuousBound:
    chi: float
    D: float
    N: int
    series_partial: float
    dissipative: str


def continuous_base_bound(profile, N):
    """chi = |a|_1 - |b|_1 and the certified series sum_{n <= N} exp(-n chi^2 / (216 D^2))."""
    if int(N) != N or N < 1:
        raise NotApplicableError(f'N must be a positive integer, got {N}')
    gap, D = chi(profile), sup_norm(profile)
    ratio = math.exp(-gap * gap / (SERIES_CONSTANT * D * D))
    partial = math.fsum(ratio ** np.arange(1, int(N) + 1))
    dissipative = YES if gap != 0 else UNDETERMINED
    logger.info('continuous base: chi=%.6g D=%.6g series %.6g', gap, D, partial)
    return ContinuousBound(chi=gap, D=D, N=int(N), series_partial=partial, dissipative=dissipative)


@dataclass(frozen=True)
class ContinuousGrowth:
    n: int
    growth: float
    lower_bound: float


def continuous_hellinger_growth(profile, n):
    """
    sum_k |sqrt a_{k+n} - sqrt a_k|_2^2 with the L2 norm of [0, 1]; only k whose
    pair touches the window or straddles it contribute.
    """
    if int(n) != n or n < 1:
        raise NotApplicableError(f'shift must be a positive integer, got {n}')
    ks = np.arange(profile.offset - n - 1, profile.end + 1)
    diff = np.sqrt(profile.rows(ks + n)) - np.sqrt(profile.rows(ks))
    growth = math.fsum(l1_norm(diff ** 2))
    gap, D = chi(profile), sup_norm(profile)
    return ContinuousGrowth(n=int(n), growth=growth, lower_bound=n * gap * gap / (GROWTH_CONSTANT * D * D))
