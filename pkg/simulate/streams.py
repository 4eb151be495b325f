import math

import numpy as np

from .configurations import WINDOW_TOL, log_rn_series, sample_configuration, window_for

BLOCK = 256
STOPPING_CHUNK = 1 << 14
STOPPING_BATCH = 64


def dyadic_checkpoints(N):
    points = [1 << j for j in range(N.bit_length()) if 1 << j <= N]
    if points[-1] != N:
        points.append(N)
    return np.array(points)


def hopf_stream(profile, N, samples, generator, beta=1.0, window_tol=WINDOW_TOL):
    """Hopf partial sums at dyadic checkpoints and Markov-event counts per shift."""
    checkpoints = dyadic_checkpoints(N)
    window = window_for(profile, N, window_tol)
    thresholds = -beta * np.log(np.arange(1, N + 1))
    partials = np.empty((samples, len(checkpoints)))
    hits = np.zeros(N, dtype=np.int64)
    for i in range(samples):
        if window is None:
            logs = np.zeros(N)
        else:
            omega = sample_configuration(profile, window, generator)
            logs = log_rn_series(profile, omega, N, window_tol)
        partials[i] = np.cumsum(np.exp(logs))[checkpoints - 1]
        hits += logs < thresholds
    return {'partials': partials.tolist(), 'markov_hits': hits.tolist()}


def clt_stream(profile, n, samples, generator):
    """Samples of S_n = sum_{j <= n} (y_j - x_j) eps_j, x_j ~ Poisson(a_j), y_j ~ Poisson(a_0)."""
    js = np.arange(1, n + 1)
    eps = profile.epsilon.epsilon(js)
    rates = profile.intensities(js)
    sums = np.empty(samples)
    for start in range(0, samples, BLOCK):
        size = min(BLOCK, samples - start)
        x = generator.poisson(rates, size=(size, n))
        y = generator.poisson(profile.amplitude, size=(size, n))
        sums[start:start + size] = (y - x) @ eps
    return {'sums': sums.tolist()}


def exceedance_level(eps):
    """Smallest integer L with L > |eps|^(-1/2), or None when eps = 0."""
    if eps == 0:
        return None
    # |eps|^(-1/2) may land a rounding error below an integer
    return math.floor(abs(eps) ** -0.5 * (1 + 1e-12)) + 1


def decay_stream(profile, ns, samples, generator):
    """Counts of |y_n - x_n| > |eps_n|^(-1/2) for each n."""
    hits = []
    for n in ns:
        L = exceedance_level(profile.epsilon.epsilon_at(n))
        if L is None:
            hits.append(0)
            continue
        x = generator.poisson(profile.intensity(n), size=samples)
        y = generator.poisson(profile.amplitude, size=samples)
        hits.append(int(np.count_nonzero(np.abs(y - x) >= L)))
    return {'hits': hits}


def _stopping_batch(profile, r, M, N, size, generator):
    crossed = np.zeros(size, dtype=bool)
    level = np.zeros(size)
    stop = np.full(size, -1, dtype=np.int64)
    overshoot = np.full(size, np.nan)
    last_step = np.full(size, np.nan)
    largest = np.zeros(size)
    for start in range(M + 1, N + 1, STOPPING_CHUNK):
        active = np.flatnonzero(~crossed)
        if active.size == 0:
            break
        js = np.arange(start, min(start + STOPPING_CHUNK, N + 1))
        eps = profile.epsilon.epsilon(js)
        x = generator.poisson(profile.intensities(js), size=(active.size, len(js)))
        y = generator.poisson(profile.amplitude, size=(active.size, len(js)))
        steps = (y - x) * eps
        paths = level[active, None] + np.cumsum(steps, axis=1)
        below = paths < r
        hit = below.any(axis=1)
        first = np.where(hit, np.argmax(below, axis=1), len(js) - 1)
        rows = np.arange(active.size)
        upto = np.arange(len(js))[None, :] <= first[:, None]
        largest[active] = np.maximum(largest[active], np.where(upto, np.abs(steps), 0.0).max(axis=1))
        level[active] = paths[rows, first]
        done = active[hit]
        crossed[done] = True
        stop[done] = js[first[hit]]
        overshoot[done] = np.abs(paths[rows, first][hit] - r)
        last_step[done] = np.abs(steps[rows, first][hit])
    return crossed, stop, overshoot, last_step, largest


def stopping_stream(profile, r, M, N, samples, generator):
    """First passage l > M of sum_{j=M+1}^{l} X_j below r, truncated at N."""
    parts = [
        _stopping_batch(profile, r, M, N, min(STOPPING_BATCH, samples - start), generator)
        for start in range(0, samples, STOPPING_BATCH)
    ]
    crossed, stop, overshoot, last_step, largest = (np.concatenate(column) for column in zip(*parts))
    return {
        'crossed': crossed.tolist(),
        'stop': stop.tolist(),
        'overshoot': [None if np.isnan(v) else float(v) for v in overshoot],
        'last_step': [None if np.isnan(v) else float(v) for v in last_step],
        'largest': largest.tolist(),
    }
