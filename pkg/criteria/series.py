"""
Series over the intensity profile that decide the Hopf type.

Both shift series are sums of nonnegative terms that are exactly linear in
the amplitude scale * base, so they are evaluated once per epsilon family at
unit amplitude (cached) and rescaled. Past the adaptive cutoff the remainder of
a power tail is added in closed form (gamma = 1/2) or by quadrature.
"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from dist.laws import hellinger_sq_poisson
from intensity.conditions import chi, limit_sets

from .exceptions import NotApplicableError

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10
QUIET_RUN = 100
_FIRST_BLOCK = 1 << 12
_MAX_BLOCK = 1 << 22
_MAX_INDEX = 1 << 34
_EXACT_CHUNK = 1 << 20


def _check_shift(n):
    if int(n) != n or n < 1:
        raise NotApplicableError(f'shift must be a positive integer, got {n}')
    return int(n)


def _sum_range(terms_of, lo, hi):
    partials = []
    for start in range(lo, hi + 1, _EXACT_CHUNK):
        ks = np.arange(start, min(start + _EXACT_CHUNK, hi + 1))
        partials.append(float(np.sum(terms_of(ks))))
    return math.fsum(partials)


def _adaptive_sum(terms_of, start, tol, remainder, min_last):
    """
    Sum k >= start in doubling blocks until the last QUIET_RUN terms of a
    block past min_last are all below tol; remainder(K) covers k > K.
    """
    partials = []
    lo, width = start, _FIRST_BLOCK
    while True:
        ks = np.arange(lo, lo + width)
        terms = terms_of(ks)
        partials.append(float(np.sum(terms)))
        last = lo + width - 1
        if last >= min_last and np.all(np.abs(terms[-QUIET_RUN:]) < tol):
            break
        if last > _MAX_INDEX:
            logger.warning('adaptive cutoff reached k=%d without settling below tol=%g', last, tol)
            break
        lo, width = last + 1, min(width * 2, _MAX_BLOCK)
    return math.fsum(partials) + remainder(last), last


def _power_eps(power):
    return lambda t: power.sign * t ** -power.gamma


def _rn_terms(family, n):
    def terms(ks):
        u = family.epsilon(ks)
        v = family.epsilon(ks - n)
        grow = np.expm1(u - v)
        # a_k^3 / a_{k-n}^2 - 3 a_k + 2 a_{k-n}, at unit amplitude
        return np.exp(v) * grow ** 2 * (grow + 3)
    return terms


def _rn_remainder(family, n, tol):
    power = family.power_tail()
    if power is None:
        return lambda last: 0.0
    if power.gamma == 0.5:
        def antiderivative(t):
            return math.log(t) + math.log(t - n) - 2 * math.log(t - n / 2 + math.sqrt(t * (t - n)))
        # sum of 3 (eps_k - eps_{k-n})^2 past the cutoff, midpoint rule
        return lambda last: 3 * (-2 * math.log(2) - antiderivative(last + 0.5))
    eps = _power_eps(power)

    def integrand(t):
        v = eps(t - n)
        grow = math.expm1(eps(t) - v)
        return math.exp(v) * grow * grow * (grow + 3)
    return lambda last: integrate.quad(integrand, last + 0.5, np.inf, epsabs=tol * 1e-3, limit=200)[0]


def _hellinger_terms(family, n):
    def terms(ks):
        u = family.epsilon(ks)
        return np.exp(u) * np.expm1((family.epsilon(ks + n) - u) / 2) ** 2
    return terms


def _hellinger_remainder(family, n, tol):
    power = family.power_tail()
    if power is None:
        return lambda last: 0.0
    if power.gamma == 0.5:
        def antiderivative(t):
            return math.log(t) + math.log(t + n) - 2 * math.log(t + n / 2 + math.sqrt(t * (t + n)))
        return lambda last: 0.25 * (-2 * math.log(2) - antiderivative(last + 0.5))
    eps = _power_eps(power)

    def integrand(t):
        u = eps(t)
        return math.exp(u) * math.expm1((eps(t + n) - u) / 2) ** 2
    return lambda last: integrate.quad(integrand, last + 0.5, np.inf, epsabs=tol * 1e-3, limit=200)[0]


def _table_end(family):
    return family.table[-1][0] if family.table else family.first_active


@lru_cache(maxsize=8192)
def _unit_rn(family, n, tol):
    first = family.first_active
    if first is None:
        return 0.0
    terms = _rn_terms(family, n)
    if family.last_active is not None:
        return _sum_range(terms, first, family.last_active + n)
    value, cutoff = _adaptive_sum(
        terms, first, tol, _rn_remainder(family, n, tol), min_last=max(first, _table_end(family)) + 2 * n,
    )
    logger.debug('rn square integral n=%d: cutoff %d', n, cutoff)
    return value


@lru_cache(maxsize=8192)
def _unit_hellinger(family, n, tol):
    first = family.first_active
    if first is None:
        return 0.0
    terms = _hellinger_terms(family, n)
    if family.last_active is not None:
        return _sum_range(terms, first - n, family.last_active)
    value, cutoff = _adaptive_sum(
        terms, first - n, tol, _hellinger_remainder(family, n, tol), min_last=max(first, _table_end(family)) + n,
    )
    logger.debug('hellinger growth n=%d: cutoff %d', n, cutoff)
    return value


def nonsingularity_deficit(profile, N):
    """sum over |n| <= N of 2 H^2(kappa_n, kappa_{n+1})."""
    if int(N) != N or N < 1:
        raise NotApplicableError(f'N must be a positive integer, got {N}')
    roots = np.sqrt(profile.intensities(np.arange(-N, N + 2)))
    return math.fsum(-2 * np.expm1(-0.5 * np.diff(roots) ** 2))


def require_chi_zero(profile):
    value = chi(profile)
    if value is None or value != 0:
        raise NotApplicableError(f'rn square integral needs chi = 0, got {value}')


def rn_square_integral(profile, n, tol=DEFAULT_TOL):
    """
    Integral of ((d mu / d mu o T^-n)^2 - 1) over the intensity, i.e.
    sum_k a_k^3 / a_{k-n}^2 - a_k. Needs chi = 0 so that the linear part of
    the summand telescopes away.
    """
    n = _check_shift(n)
    require_chi_zero(profile)
    return profile.amplitude * _unit_rn(profile.epsilon, n, tol / profile.amplitude)


def hellinger_growth(profile, n, tol=DEFAULT_TOL):
    """Squared L2 distance of sqrt(d mu o T^n / d mu) from 1: sum_k (sqrt a_{k+n} - sqrt a_k)^2."""
    n = _check_shift(n)
    return profile.amplitude * _unit_hellinger(profile.epsilon, n, tol / profile.amplitude)


def inner_product_decay(profile, n, tol=DEFAULT_TOL):
    """<U^n 1, 1> = prod_k (1 - H^2(kappa_{k-n}, kappa_k))."""
    return math.exp(-0.5 * hellinger_growth(profile, n, tol))


@dataclass(frozen=True)
class LimitSetDecay:
    n: int
    inner_product: float
    middle_product: float
    middle_factors: int
    delta: float
    bound: float


def limit_set_decay(profile, n):
    """Exponential decay of <U^n 1, 1> when the two limit sets are apart."""
    n = _check_shift(n)
    sets = limit_sets(profile)
    if sets is None or not sets[0].disjoint(sets[1]):
        raise NotApplicableError('limit sets are not disjoint')
    delta_sq = hellinger_sq_poisson(*sets[0].distance(sets[1]))
    ks = [k for k in range(n // 3, 2 * n // 3 + 1) if n < 3 * k < 2 * n]
    middle = math.prod(
        1 - hellinger_sq_poisson(profile.intensity(k - n), profile.intensity(k)) for k in ks
    )
    return LimitSetDecay(
        n=n,
        inner_product=inner_product_decay(profile, n),
        middle_product=middle,
        middle_factors=len(ks),
        delta=math.sqrt(delta_sq),
        bound=(1 - delta_sq) ** (n / 3),
    )
