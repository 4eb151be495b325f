import logging
import math
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from intensity.families import IntensityProfile

from .exceptions import NotApplicableError
from .series import DEFAULT_TOL, hellinger_growth, require_chi_zero, rn_square_integral

logger = logging.getLogger(__name__)

RN_SQUARE_INTEGRAL = 'rn_square_integral'
HELLINGER_GROWTH = 'hellinger_growth'

FIT_KINDS = [
    (RN_SQUARE_INTEGRAL, 'Squared Radon-Nikodym integral'),
    (HELLINGER_GROWTH, 'Hellinger growth'),
]

SERIES = {
    RN_SQUARE_INTEGRAL: rn_square_integral,
    HELLINGER_GROWTH: hellinger_growth,
}

DEFAULT_N_GRID = tuple(2 ** p for p in range(4, 18))


@dataclass(frozen=True)
class SlopeFit:
    """
    Least-squares fit of y(n) = slope * log n + intercept + correction / sqrt(n).

    residual is the RMS deviation, stderr the standard error of the slope.
    """

    kind: str
    slope: float
    intercept: float
    correction: float
    residual: float
    stderr: float
    n_range: tuple
    points: tuple = field(default=(), repr=False)

    def scaled(self, factor):
        return replace(
            self,
            slope=self.slope * factor,
            intercept=self.intercept * factor,
            correction=self.correction * factor,
            residual=self.residual * factor,
            stderr=self.stderr * factor,
            points=tuple((n, value * factor) for n, value in self.points),
        )

    def lower(self, sigmas):
        return self.slope - sigmas * self.stderr

    def upper(self, sigmas):
        return self.slope + sigmas * self.stderr


def least_squares(kind, ns, values):
    ns = np.asarray(ns, dtype=float)
    values = np.asarray(values, dtype=float)
    if len(ns) < 4:
        raise NotApplicableError('slope fits need at least four shifts')
    design = np.column_stack([np.log(ns), np.ones_like(ns), ns ** -0.5])
    coefficients, *_ = np.linalg.lstsq(design, values, rcond=None)
    residuals = values - design @ coefficients
    dof = len(ns) - design.shape[1]
    sigma_sq = float(residuals @ residuals) / dof
    covariance = sigma_sq * np.linalg.inv(design.T @ design)
    return SlopeFit(
        kind=kind,
        slope=float(coefficients[0]),
        intercept=float(coefficients[1]),
        correction=float(coefficients[2]),
        residual=math.sqrt(float(np.mean(residuals ** 2))),
        stderr=math.sqrt(max(float(covariance[0, 0]), 0.0)),
        n_range=(int(ns[0]), int(ns[-1])),
        points=tuple(zip((int(n) for n in ns), (float(v) for v in values))),
    )


@lru_cache(maxsize=256)
def _unit_fit(kind, family, n_grid, tol):
    unit = IntensityProfile(base=1.0, epsilon=family)
    values = [SERIES[kind](unit, n, tol) for n in n_grid]
    fit = least_squares(kind, n_grid, values)
    logger.info('%s unit slope %.6f +- %.2g over n in [%d, %d]', kind, fit.slope, fit.stderr, *fit.n_range)
    return fit


def fit_slope(kind, profile, n_grid=DEFAULT_N_GRID, tol=DEFAULT_TOL):
    """Fit at unit amplitude (cached per epsilon family) and rescale; tol is relative to the amplitude."""
    if kind not in SERIES:
        raise ValueError(f'Unknown series {kind!r}')
    n_grid = tuple(sorted(int(n) for n in n_grid))
    if kind == RN_SQUARE_INTEGRAL:
        require_chi_zero(profile)
    return _unit_fit(kind, profile.epsilon, n_grid, tol).scaled(profile.amplitude)
