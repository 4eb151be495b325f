"""
Conservativity and dissipativity certificates.

A verdict is only issued when the decisive inequality holds with CERTIFICATE_SIGMAS
standard errors of the slope fit to spare; anything closer is inconclusive.
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from intensity.conditions import NO, NONSINGULAR, UNDETERMINED, YES, check_condition, chi, limit_sets

from .exceptions import MonotonicityViolation, NotApplicableError
from .fits import DEFAULT_N_GRID, HELLINGER_GROWTH, RN_SQUARE_INTEGRAL, fit_slope
from .series import DEFAULT_TOL, hellinger_growth, rn_square_integral

logger = logging.getLogger(__name__)

CONSERVATIVE = 'conservative'
TOTALLY_DISSIPATIVE = 'totally_dissipative'
INCONCLUSIVE = 'inconclusive'
NOT_NONSINGULAR = 'not_nonsingular'

VERDICTS = [
    (CONSERVATIVE, 'Conservative'),
    (TOTALLY_DISSIPATIVE, 'Totally dissipative'),
    (INCONCLUSIVE, 'Inconclusive'),
    (NOT_NONSINGULAR, 'Not nonsingular'),
]

HELLINGER_SERIES = 'hellinger_series'
WEIGHTED_RN_SERIES = 'weighted_rn_series'
DISJOINT_LIMIT_SETS = 'disjoint_limit_sets'
CHI_NONZERO = 'chi_nonzero'
SLOPE_FIT = 'slope_fit'

CERTIFICATE_SIGMAS = 3.0
DEFAULT_SERIES_N = 256


@dataclass(frozen=True)
class Certificate:
    kind: str
    values: dict = field(default_factory=dict)
    fit: object = None


@dataclass(frozen=True)
class ClassificationReport:
    verdict: str
    certificate: Certificate | None
    profile: object
    evidence: tuple = ()


@dataclass(frozen=True)
class DissipativitySeries:
    N: int
    partial: float
    convergent: str
    fit: object

    @property
    def verdict(self):
        return TOTALLY_DISSIPATIVE if self.convergent == YES else INCONCLUSIVE


def _unit_values(series, profile, N, tol):
    unit = profile.unit()
    return profile.amplitude * np.array([series(unit, n, tol) for n in range(1, N + 1)])


def dissipativity_series(profile, N=DEFAULT_SERIES_N, n_grid=DEFAULT_N_GRID, tol=DEFAULT_TOL):
    """
    Partial sum of exp(-hellinger_growth(n) / 2) for n <= N.

    The terms behave like n^(-s/2) for the fitted slope s, so the series
    converges iff s > 2.
    """
    if int(N) != N or N < 1:
        raise NotApplicableError(f'N must be a positive integer, got {N}')
    fit = fit_slope(HELLINGER_GROWTH, profile, n_grid, tol)
    partial = math.fsum(np.exp(-0.5 * _unit_values(hellinger_growth, profile, int(N), tol)))
    if fit.lower(CERTIFICATE_SIGMAS) > 2:
        convergent = YES
    elif fit.upper(CERTIFICATE_SIGMAS) < 2:
        convergent = NO
    else:
        convergent = UNDETERMINED
    logger.info('dissipativity series N=%d: partial %.6g, slope %.4f, convergent %s', N, partial, fit.slope, convergent)
    return DissipativitySeries(N=int(N), partial=partial, convergent=convergent, fit=fit)


def choose_beta(c):
    """Midpoint-style exponent in (c/2 + 1/2, 1] for an rn slope c < 1."""
    return min((1 + c) / 2 + (1 - c) / 4, 1.0)


def conservativity_certificate(profile, N=DEFAULT_SERIES_N, n_grid=DEFAULT_N_GRID, tol=DEFAULT_TOL):
    """
    Conservative when sum n^(-2 beta) exp(I(n)) converges for some beta <= 1,
    I(n) being the squared rn integral. With I(n) ~ c log n that needs c < 1.
    """
    if check_condition(profile, NONSINGULAR).holds != YES:
        raise NotApplicableError('conservativity certificate needs a nonsingular profile')
    fit = fit_slope(RN_SQUARE_INTEGRAL, profile, n_grid, tol)
    if not fit.upper(CERTIFICATE_SIGMAS) < 1:
        logger.info('no conservativity certificate: rn slope %.4f +- %.2g', fit.slope, fit.stderr)
        return ClassificationReport(INCONCLUSIVE, Certificate(SLOPE_FIT, fit=fit), profile)
    c = fit.slope
    beta = choose_beta(c)
    ns = np.arange(1, N + 1)
    weighted = math.fsum(ns ** (-2 * beta) * np.exp(_unit_values(rn_square_integral, profile, int(N), tol)))
    values = {'c': c, 'beta': beta, 'exponent': 2 * beta - c, 'N': int(N), 'weighted_series': weighted}
    logger.info('conservative: c=%.4f beta=%.4f weighted series %.6g', c, beta, weighted)
    return ClassificationReport(CONSERVATIVE, Certificate(WEIGHTED_RN_SERIES, values, fit), profile)


def classify(profile, N=DEFAULT_SERIES_N, n_grid=DEFAULT_N_GRID, tol=DEFAULT_TOL):
    nonsingular = check_condition(profile, NONSINGULAR)
    if nonsingular.holds == NO:
        return ClassificationReport(NOT_NONSINGULAR, None, profile, (nonsingular,))
    if nonsingular.holds == UNDETERMINED:
        return ClassificationReport(INCONCLUSIVE, None, profile, (nonsingular,))

    gap = chi(profile)
    if gap is not None and gap != 0:
        return ClassificationReport(TOTALLY_DISSIPATIVE, Certificate(CHI_NONZERO, {'chi': gap}), profile)

    sets = limit_sets(profile)
    if sets is not None and sets[0].disjoint(sets[1]):
        left, right = sets
        values = {'left': (left.lo, left.hi), 'right': (right.lo, right.hi)}
        return ClassificationReport(TOTALLY_DISSIPATIVE, Certificate(DISJOINT_LIMIT_SETS, values), profile)

    series = dissipativity_series(profile, N, n_grid, tol)
    if series.convergent == YES:
        values = {'N': series.N, 'partial': series.partial, 'slope': series.fit.slope}
        return ClassificationReport(TOTALLY_DISSIPATIVE, Certificate(HELLINGER_SERIES, values, series.fit), profile)

    if gap is None:
        return ClassificationReport(INCONCLUSIVE, Certificate(SLOPE_FIT, fit=series.fit), profile)
    report = conservativity_certificate(profile, N, n_grid, tol)
    if report.verdict == CONSERVATIVE:
        return report
    return ClassificationReport(
        INCONCLUSIVE, report.certificate, profile, (Certificate(SLOPE_FIT, fit=series.fit),),
    )


_RANK = {CONSERVATIVE: 0, INCONCLUSIVE: 1, TOTALLY_DISSIPATIVE: 2}


@dataclass(frozen=True)
class Bracket:
    t_lower: float
    t_upper: float
    lower_report: ClassificationReport
    upper_report: ClassificationReport
    scan: tuple


def _verdict_at(profile, t, **kwargs):
    report = classify(profile.rescaled(t), **kwargs)
    if report.verdict not in _RANK:
        raise NotApplicableError(f'scale {t} gives verdict {report.verdict}')
    return report


def _bisect(profile, lo, hi, inside, rtol, **kwargs):
    """Shrink [lo, hi] in log scale keeping inside(lo) true and inside(hi) false."""
    lo_report = hi_report = None
    while hi / lo > 1 + rtol:
        mid = math.sqrt(lo * hi)
        report = _verdict_at(profile, mid, **kwargs)
        if inside(report.verdict):
            lo, lo_report = mid, report
        else:
            hi, hi_report = mid, report
    return lo, hi, lo_report, hi_report


def bifurcation_bracket(profile, t_min=2.0 ** -10, t_max=2.0 ** 10, rtol=1e-3, **kwargs):
    """
    Scales (t_lower, t_upper): conservative up to t_lower, totally dissipative from t_upper on.

    A coarse geometric scan checks that verdicts never step back towards
    conservative, then both transitions are bisected.
    """
    scales = np.geomspace(t_min, t_max, int(round(math.log2(t_max / t_min))) + 1)
    scan = tuple((float(t), _verdict_at(profile, float(t), **kwargs)) for t in scales)
    ranks = [_RANK[report.verdict] for _, report in scan]
    if any(b < a for a, b in zip(ranks, ranks[1:])):
        pattern = [(t, report.verdict) for t, report in scan]
        raise MonotonicityViolation('verdicts are not monotone in the scale', report={'scan': pattern})
    if ranks[0] != 0 or ranks[-1] != 2:
        raise NotApplicableError(
            f'no transition from conservative to dissipative in [{t_min}, {t_max}]',
        )
    last_conservative = max(i for i, rank in enumerate(ranks) if rank == 0)
    first_dissipative = min(i for i, rank in enumerate(ranks) if rank == 2)

    t_lower, _, lower_report, _ = _bisect(
        profile, scales[last_conservative], scales[last_conservative + 1],
        lambda verdict: verdict == CONSERVATIVE, rtol, **kwargs,
    )
    _, t_upper, _, upper_report = _bisect(
        profile, scales[first_dissipative - 1], scales[first_dissipative],
        lambda verdict: verdict != TOTALLY_DISSIPATIVE, rtol, **kwargs,
    )
    lower_report = lower_report or scan[last_conservative][1]
    upper_report = upper_report or scan[first_dissipative][1]
    logger.info('bifurcation bracket [%.5g, %.5g]', t_lower, t_upper)
    return Bracket(float(t_lower), float(t_upper), lower_report, upper_report, scan)
