"""Verdicts for the built-in families are symbolic; partial sums are evidence only."""
import logging
import math
from dataclasses import dataclass

import numpy as np

from .families import EXPLICIT, POWER, STEP, ZERO

logger = logging.getLogger(__name__)

NONSINGULAR = 'eq3_1'        # sum (sqrt a_{n-1} - sqrt a_n)^2 < inf
SLOW_DECAY = 'eq3_4'         # eps_n = 0 for n <= 1, eps -> 0, sum eps^2 = inf, sum eps^4 < inf
BOUNDED_VARIATION = 'aut1'   # sum |a_{n-1} - a_n| < inf
CHI_ZERO = 'chi_zero'
EQUIVALENCE = 'equivalence'

CONDITION_IDS = [
    (NONSINGULAR, 'Square-root increments summable'),
    (SLOW_DECAY, 'Slowly vanishing perturbation'),
    (BOUNDED_VARIATION, 'Increments summable'),
    (CHI_ZERO, 'Equal limits at both ends'),
]

YES = 'yes'
NO = 'no'
UNDETERMINED = 'undetermined'

EVIDENCE_N = (10 ** 2, 10 ** 3, 10 ** 4, 10 ** 5)


@dataclass(frozen=True)
class PartialSum:
    series: str
    N: int
    value: float


@dataclass(frozen=True)
class ConditionVerdict:
    condition_id: str
    holds: str
    evidence: tuple = ()


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def disjoint(self, other):
        return self.hi < other.lo or other.hi < self.lo

    def distance(self, other):
        """Nearest endpoints, 0 when the intervals meet."""
        if not self.disjoint(other):
            return 0.0, None
        if self.hi < other.lo:
            return self.hi, other.lo
        return self.lo, other.hi


def _symmetric_partial_sums(series, terms_of, ns=EVIDENCE_N):
    """Partial sums over |n| <= N of terms_of(ks) for each N in ns."""
    top = max(ns)
    ks = np.arange(-top, top + 1)
    terms = terms_of(ks)
    return tuple(
        PartialSum(series, N, math.fsum(terms[top - N:top + N + 1])) for N in ns
    )


def _forward_partial_sums(series, terms_of, ns=EVIDENCE_N):
    top = max(ns)
    terms = terms_of(np.arange(1, top + 1))
    cumulative = np.cumsum(terms)
    return tuple(PartialSum(series, N, float(cumulative[N - 1])) for N in ns)


def _evidence(profile, condition_id):
    family = profile.epsilon
    if condition_id == NONSINGULAR:
        def terms(ks):
            roots = np.sqrt(profile.intensities(np.concatenate(([ks[0] - 1], ks))))
            return np.diff(roots) ** 2
        return _symmetric_partial_sums('sqrt_increments', terms)
    if condition_id == BOUNDED_VARIATION:
        def terms(ks):
            return np.abs(np.diff(profile.intensities(np.concatenate(([ks[0] - 1], ks)))))
        return _symmetric_partial_sums('abs_increments', terms)
    if condition_id == SLOW_DECAY:
        return (
            _forward_partial_sums('eps_squared', lambda ks: family.epsilon(ks) ** 2)
            + _forward_partial_sums('eps_fourth', lambda ks: family.epsilon(ks) ** 4)
        )
    return tuple(
        PartialSum('endpoint_gap', N, profile.intensity(N) - profile.intensity(-N)) for N in EVIDENCE_N
    )


def _symbolic(family, condition_id):
    if family.kind == ZERO:
        return NO if condition_id == SLOW_DECAY else YES
    if family.kind == POWER:
        if condition_id == SLOW_DECAY:
            # sum n^-2g diverges iff 2g <= 1; sum n^-4g converges iff 4g > 1
            return YES if 0.25 < family.gamma <= 0.5 else NO
        return YES
    if family.kind == STEP:
        if condition_id == SLOW_DECAY:
            return NO
        if condition_id == CHI_ZERO:
            return YES if family.left == family.right else NO
        return YES
    if family.tail is None:
        return UNDETERMINED
    # A finite table changes finitely many terms of every series.
    if condition_id == SLOW_DECAY and any(n <= 1 and eps != 0 for n, eps in family.table):
        return NO
    return _symbolic(family.tail, condition_id)


def check_condition(profile, condition_id):
    if condition_id not in dict(CONDITION_IDS):
        raise ValueError(f'Unknown condition {condition_id!r}')
    holds = _symbolic(profile.epsilon, condition_id)
    logger.debug('%s for %s: %s', condition_id, profile, holds)
    return ConditionVerdict(condition_id, holds, _evidence(profile, condition_id))


def chi(profile):
    """a_{+inf} - a_{-inf}, or None when undetermined."""
    limits = profile.epsilon.limits
    if limits is None or _symbolic(profile.epsilon, BOUNDED_VARIATION) != YES:
        return None
    left, right = limits
    return profile.amplitude * (math.exp(right) - math.exp(left))


def limit_sets(profile):
    """Limit points of (a_n)_{n<0} and (a_n)_{n>0} as intervals, or None when undeclared."""
    limits = profile.epsilon.limits
    if limits is None:
        return None
    left, right = (profile.amplitude * math.exp(eps) for eps in limits)
    return Interval(left, left), Interval(right, right)


def _reduced(family):
    return family.tail if family.kind == EXPLICIT else family


def check_equivalence(first, second, ns=EVIDENCE_N):
    """Whether the two product Poisson laws are equivalent: sum (sqrt a_n - sqrt b_n)^2 < inf."""

    def terms(ks):
        return (np.sqrt(first.intensities(ks)) - np.sqrt(second.intensities(ks))) ** 2

    evidence = _symmetric_partial_sums('sqrt_differences', terms, ns)
    if not (first.epsilon.declared and second.epsilon.declared):
        return ConditionVerdict(EQUIVALENCE, UNDETERMINED, evidence)
    ends_first, ends_second = limit_sets(first), limit_sets(second)
    if any(not math.isclose(x.lo, y.lo, rel_tol=1e-15) for x, y in zip(ends_first, ends_second)):
        return ConditionVerdict(EQUIVALENCE, NO, evidence)
    f, g = _reduced(first.epsilon), _reduced(second.epsilon)
    if f == g:
        return ConditionVerdict(EQUIVALENCE, YES, evidence)
    gammas = [family.gamma for family in (f, g) if family.kind == POWER]
    if not gammas:
        # both eventually constant with matching limits
        return ConditionVerdict(EQUIVALENCE, YES, evidence)
    return ConditionVerdict(EQUIVALENCE, YES if 2 * min(gammas) > 1 else NO, evidence)
