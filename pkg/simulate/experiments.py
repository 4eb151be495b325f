"""
Monte Carlo experiments around the Hopf type of the suspension.

Every experiment splits its samples over RNG streams (see simulate.tasks), merges
the stream results in stream order and returns an ExperimentSummary whose
statistics depend only on the parameters and the RNG spec.
"""
import logging
import math
import time
from dataclasses import dataclass, field

import numpy as np
from django.conf import settings
from scipy import stats

from criteria.exceptions import NotApplicableError
from criteria.series import rn_square_integral
from dist.laws import SkellamLaw, tail_threshold
from intensity.conditions import NONSINGULAR, SLOW_DECAY, YES, check_condition

from . import tasks
from .configurations import WINDOW_TOL
from .exceptions import ExperimentRefused
from .streams import dyadic_checkpoints, exceedance_level

logger = logging.getLogger(__name__)

HEURISTIC = 'HEURISTIC'
QUANTILES = (0.1, 0.25, 0.5, 0.75, 0.9)
KS_LEVEL = 0.99
CLT_THRESHOLDS = (1, 5, 10)
DIVERGENCE_SLOPE = 0.25
MONOTONE_TOL = 0.05
DECAY_NS = (10, 100, 1000, 10000, 100000)
DIVERGENT = 'divergent'
CONVERGENT = 'convergent'


@dataclass
class ExperimentSummary:
    name: str
    parameters: dict
    statistics: dict
    rng: object
    streams: int
    runtime: float = 0.0
    label: str | None = None
    children: list = field(default_factory=list)


def _workers(workers):
    return settings.LAB_WORKERS if workers is None else workers


def _require(profile, condition_id, experiment):
    verdict = check_condition(profile, condition_id).holds
    if verdict != YES:
        raise ExperimentRefused(f'{experiment} needs {condition_id}, which is {verdict} for this profile')


def _summary(name, parameters, statistics, rng, streams, started, label=None):
    runtime = time.perf_counter() - started
    logger.info('%s finished in %.2fs over %d streams', name, runtime, streams)
    return ExperimentSummary(name, parameters, statistics, rng, streams, runtime, label)


def hopf_diagnostic(profile, N, samples, rng, workers=None, beta=1.0, window_tol=WINDOW_TOL):
    """
    Distribution of the Hopf partial sums sum_{n <= N'} (T*^n)'(omega) at dyadic N'.

    Markov events A_n = {(T*^n)' < n^-beta} are counted against the bound
    n^(-2 beta) exp(I(n)) when the rn square integral I is available.
    Finite partial sums cannot certify anything: the summary is HEURISTIC.
    """
    started = time.perf_counter()
    if int(N) != N or N < 1:
        raise ExperimentRefused(f'N must be a positive integer, got {N}')
    N = int(N)
    _require(profile, NONSINGULAR, 'hopf diagnostic')
    workers = _workers(workers)
    parts = tasks.run_streams(tasks.hopf_stream, profile, rng, samples, workers, N, beta, window_tol)
    partials = np.concatenate([np.array(part['partials'], ndmin=2) for part in parts])
    hits = np.sum([part['markov_hits'] for part in parts], axis=0)

    checkpoints = dyadic_checkpoints(N)
    quantiles = np.quantile(partials, QUANTILES, axis=0)
    medians = quantiles[QUANTILES.index(0.5)]
    growth = growth_exponent(checkpoints, medians)

    ns = np.arange(1, N + 1)
    frequencies = hits / samples
    try:
        bounds = ns ** (-2 * beta) * np.exp([rn_square_integral(profile, n) for n in ns])
    except NotApplicableError:
        bounds = None
    bound_list = [None] * N if bounds is None else bounds.tolist()
    markov = [
        {'n': int(n), 'frequency': float(f), 'bound': b} for n, f, b in zip(ns, frequencies, bound_list)
    ]
    violations = None
    if bounds is not None:
        capped = np.minimum(bounds, 1.0)
        slack = 3 * np.sqrt(capped * (1 - capped) / samples)
        violations = int(np.count_nonzero(frequencies > capped + slack))

    statistics = {
        'checkpoints': checkpoints.tolist(),
        'median': medians.tolist(),
        'quantiles': {str(q): row.tolist() for q, row in zip(QUANTILES, quantiles)},
        'mean': partials.mean(axis=0).tolist(),
        'growth_exponent': growth,
        'verdict': None if growth is None else (DIVERGENT if growth >= DIVERGENCE_SLOPE else CONVERGENT),
        'markov': markov,
        'markov_violations': violations,
    }
    parameters = {
        'N': N, 'samples': samples, 'beta': beta, 'window_tol': window_tol,
        'window': profile.rn_support(N, window_tol),
    }
    return _summary('hopf', parameters, statistics, rng, len(parts), started, HEURISTIC)


def growth_exponent(checkpoints, medians, start=4):
    """Least-squares slope of log median partial sum against log N over checkpoints >= start."""
    keep = checkpoints >= start
    if np.count_nonzero(keep) < 2:
        return None
    fit = stats.linregress(np.log(checkpoints[keep]), np.log(np.maximum(medians[keep], np.finfo(float).tiny)))
    return float(fit.slope)


def clt_experiment(profile, n, samples, rng, workers=None):
    """
    Y_n = beta_n (S_n - E S_n) with S_n = sum_{j <= n} (y_j - x_j) eps_j.

    The limit law is N(0, 2a); at finite n the variance is
    beta_n^2 sum eps_j^2 (a_0 + a_j), so both Gaussians are tested.
    """
    started = time.perf_counter()
    _require(profile, SLOW_DECAY, 'clt experiment')
    if int(n) != n or n < 2:
        raise ExperimentRefused(f'n must be an integer >= 2, got {n}')
    n = int(n)
    workers = _workers(workers)
    parts = tasks.run_streams(tasks.clt_stream, profile, rng, samples, workers, n)
    sums = np.concatenate([np.asarray(part['sums'], dtype=float) for part in parts])

    js = np.arange(1, n + 1)
    eps = profile.epsilon.epsilon(js)
    a0, rates = profile.amplitude, profile.intensities(js)
    beta_n = 1 / math.sqrt(math.fsum(eps ** 2))
    mean_shift = math.fsum(eps * (a0 - rates))
    finite_variance = beta_n ** 2 * math.fsum(eps ** 2 * (a0 + rates))
    ys = beta_n * (sums - mean_shift)

    variance = float(np.var(ys, ddof=1))
    statistics = {
        'beta_n': beta_n,
        'drift': beta_n * mean_shift,
        'mean': float(np.mean(ys)),
        'variance': variance,
        'variance_stderr': variance * math.sqrt(2 / (samples - 1)),
        'limit_variance': 2 * a0,
        'finite_variance': finite_variance,
        'ks_limit': float(stats.kstest(ys, 'norm', args=(0, math.sqrt(2 * a0))).statistic),
        'ks_finite': float(stats.kstest(ys, 'norm', args=(0, math.sqrt(finite_variance))).statistic),
        'ks_critical': float(stats.kstwobign.ppf(KS_LEVEL) / math.sqrt(samples)),
        'frequency_above': {str(p): float(np.mean(sums > -p)) for p in CLT_THRESHOLDS},
    }
    return _summary('clt', {'n': n, 'samples': samples}, statistics, rng, len(parts), started)


def decay_experiment(profile, samples, rng, ns=DECAY_NS, workers=None):
    """
    P(|y_n - x_n| > |eps_n|^(-1/2)) by Monte Carlo and exactly, against eps_n^4.

    The exact tail only has to beat eps_n^4 where the cutoff reaches the
    threshold from which every Skellam tail with rates up to A is below l^-8.
    """
    started = time.perf_counter()
    _require(profile, SLOW_DECAY, 'decay experiment')
    ns = [int(n) for n in ns]
    workers = _workers(workers)
    parts = tasks.run_streams(tasks.decay_stream, profile, rng, samples, workers, ns)
    hits = np.sum([part['hits'] for part in parts], axis=0)

    a0 = profile.amplitude
    A = max(a0, *(profile.intensity(n) for n in ns))
    threshold = tail_threshold(A, closed=True)
    rows = []
    for n, count in zip(ns, hits):
        eps = profile.epsilon.epsilon_at(n)
        cutoff = abs(eps) ** -0.5 if eps else math.inf
        L = exceedance_level(eps)
        exact = 0.0 if L is None else SkellamLaw(a0, profile.intensity(n)).tail(L).exact
        frequency = count / samples
        sigma = math.sqrt(max(exact * (1 - exact), 1 / samples) / samples)
        beyond = threshold is not None and L is not None and L >= threshold
        rows.append({
            'n': n,
            'cutoff': cutoff,
            'L': L,
            'exact': exact,
            'monte_carlo': frequency,
            'sigma': sigma,
            'eps4': eps ** 4,
            'beyond_threshold': beyond,
            'mc_within_3sigma': frequency <= exact + 3 * sigma,
            'exact_below_eps4': exact < eps ** 4 if beyond else None,
        })
    statistics = {'threshold': threshold, 'A': A, 'rows': rows}
    return _summary('decay', {'ns': ns, 'samples': samples}, statistics, rng, len(parts), started)


def stopping_time_experiment(profile, r, eps, M, N, samples, rng, workers=None):
    """
    l(z) = first l > M with sum_{j=M+1}^{l} X_j < r, X_j = (y_j - x_j) eps_j.

    Samples that have not crossed by N count as failures; no resampling.
    """
    started = time.perf_counter()
    if not r < -1:
        raise ExperimentRefused(f'r must be < -1, got {r}')
    if not eps > 0:
        raise ExperimentRefused(f'eps must be positive, got {eps}')
    if not 0 < M < N:
        raise ExperimentRefused(f'need 0 < M < N, got M={M}, N={N}')
    _require(profile, SLOW_DECAY, 'stopping time experiment')
    workers = _workers(workers)
    parts = tasks.run_streams(tasks.stopping_stream, profile, rng, samples, workers, r, int(M), int(N))
    crossed = np.concatenate([part['crossed'] for part in parts]).astype(bool)
    stop = np.concatenate([part['stop'] for part in parts])
    overshoot = np.concatenate([np.array(part['overshoot'], dtype=float) for part in parts])
    last_step = np.concatenate([np.array(part['last_step'], dtype=float) for part in parts])
    largest = np.concatenate([part['largest'] for part in parts]).astype(float)

    small = largest < eps
    conditional = crossed & small
    success = float(np.mean(crossed))
    conditional_fraction = float(np.mean(overshoot[conditional] < eps)) if conditional.any() else None
    statistics = {
        'success_frequency': success,
        'crossings': int(crossed.sum()),
        'median_stop': float(np.median(stop[crossed])) if crossed.any() else None,
        'max_overshoot': float(np.max(overshoot[crossed])) if crossed.any() else None,
        'overshoot_within_last_step': bool(np.all(overshoot[crossed] <= last_step[crossed] + 1e-12)),
        'small_steps_fraction': float(np.mean(small)),
        'conditional_overshoot_fraction': conditional_fraction,
        'conditions_met': bool(success > 0.5 and conditional_fraction == 1.0),
    }
    parameters = {'r': r, 'eps': eps, 'M': int(M), 'N': int(N), 'samples': samples}
    return _summary('stopping', parameters, statistics, rng, len(parts), started)


def scan_intensity(profile, t_grid, N, samples, rng, workers=None, window_tol=WINDOW_TOL, monotone_tol=MONOTONE_TOL):
    """
    Hopf diagnostics along the intensity scales t_grid.

    The growth indicator should not increase with t; a rise beyond
    monotone_tol or a divergent verdict after a convergent one is an anomaly.
    """
    started = time.perf_counter()
    t_grid = [float(t) for t in t_grid]
    if any(t <= 0 for t in t_grid) or any(b <= a for a, b in zip(t_grid, t_grid[1:])):
        raise ExperimentRefused('t_grid must be positive and strictly increasing')
    workers = _workers(workers)
    children = [
        hopf_diagnostic(profile.rescaled(t), N, samples, rng, workers, window_tol=window_tol) for t in t_grid
    ]
    indicators = [child.statistics['growth_exponent'] for child in children]
    verdicts = [child.statistics['verdict'] for child in children]
    anomalies = []
    for i in range(1, len(t_grid)):
        if None in (indicators[i - 1], indicators[i]):
            continue
        if indicators[i] > indicators[i - 1] + monotone_tol:
            anomalies.append({'t': t_grid[i], 'reason': 'indicator increased'})
        if verdicts[i] == DIVERGENT and CONVERGENT in verdicts[:i]:
            anomalies.append({'t': t_grid[i], 'reason': 'divergent after convergent'})
    if anomalies:
        logger.warning('scan anomalies: %s', anomalies)
    statistics = {
        'rows': [
            {'t': t, 'growth_exponent': g, 'verdict': v, 'median_final': child.statistics['median'][-1]}
            for t, g, v, child in zip(t_grid, indicators, verdicts, children)
        ],
        'anomaly': bool(anomalies),
        'anomalies': anomalies,
    }
    parameters = {'t_grid': t_grid, 'N': int(N), 'samples': samples, 'monotone_tol': monotone_tol}
    summary = _summary('scan', parameters, statistics, rng, workers, started, HEURISTIC)
    summary.children = children
    return summary
