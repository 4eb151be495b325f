import logging

from celery import group, shared_task

from intensity.serializers import profile_from_document, profile_to_document

from . import streams
from .rng import RNGSpec, split_samples

logger = logging.getLogger(__name__)


@shared_task
def hopf_stream(profile_document, samples, seed, stream, N, beta, window_tol):
    profile = profile_from_document(profile_document)
    return streams.hopf_stream(profile, N, samples, RNGSpec(seed, stream).generator(), beta, window_tol)


@shared_task
def clt_stream(profile_document, samples, seed, stream, n):
    profile = profile_from_document(profile_document)
    return streams.clt_stream(profile, n, samples, RNGSpec(seed, stream).generator())


@shared_task
def decay_stream(profile_document, samples, seed, stream, ns):
    profile = profile_from_document(profile_document)
    return streams.decay_stream(profile, ns, samples, RNGSpec(seed, stream).generator())


@shared_task
def stopping_stream(profile_document, samples, seed, stream, r, M, N):
    profile = profile_from_document(profile_document)
    return streams.stopping_stream(profile, r, M, N, samples, RNGSpec(seed, stream).generator())


def run_streams(task, profile, rng, samples, workers, *args):
    """
    Run `task` once per stream with its share of the samples.

    Partial results come back in stream order whether the group ran eagerly
    or on a worker pool.
    """
    counts = split_samples(samples, workers)
    document = dict(profile_to_document(profile))
    signatures = [
        task.s(document, count, spec.seed, spec.stream, *args)
        for count, spec in zip(counts, rng.streams(len(counts)))
    ]
    logger.debug('dispatching %d %s streams for %d samples', len(signatures), task.name, samples)
    return group(signatures).apply_async().get()
