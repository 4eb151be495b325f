import logging
import math
import time
from dataclasses import dataclass, replace
from pathlib import Path

from django.conf import settings
from rest_framework.exceptions import ValidationError

from criteria.certificates import bifurcation_bracket, classify, dissipativity_series
from criteria.continuous import continuous_base_bound, continuous_hellinger_growth
from criteria.exceptions import NotApplicableError
from criteria.fits import HELLINGER_GROWTH, RN_SQUARE_INTEGRAL, fit_slope
from criteria.serializers import (
    BracketSerializer, ClassificationReportSerializer, ContinuousBoundSerializer, ContinuousGrowthSerializer,
    DensityProfileSerializer, DissipativitySeriesSerializer, LimitSetDecaySerializer, SlopeFitSerializer,
)
from criteria.series import limit_set_decay, nonsingularity_deficit
from dist.laws import SkellamLaw, tail_threshold
from intensity.conditions import CONDITION_IDS, check_condition, check_equivalence, chi, limit_sets
from intensity.families import EpsilonFamily
from intensity.serializers import ConditionVerdictSerializer, IntervalSerializer, profile_to_document
from simulate.experiments import (
    clt_experiment, decay_experiment, hopf_diagnostic, scan_intensity, stopping_time_experiment,
)
from simulate.rng import RNGSpec
from simulate.serializers import ExperimentSummarySerializer
from suspensionlab.exceptions import AnomalyError, ConfigError, LabError
from suspensionlab.serializers import finite_or_none, finite_tree

from .models import Run
from .reports import Report, body_digest, build_header, default_path
from .serializers import KNOB_DEFAULTS, RunConfigSerializer

logger = logging.getLogger(__name__)

# command -> handler(run) returning (body, CSV rows or None)
HANDLERS = {}

LIMIT_SET_SHIFTS = (30, 60, 120)


def handler(command):
    def register(func):
        HANDLERS[command] = func
        return func
    return register


@dataclass
class RunInput:
    command: str
    profile: object
    densities: object
    knobs: dict
    rng: RNGSpec


@dataclass
class Outcome:
    run: Run
    report: Report
    path: Path


@handler('check')
def check(run):
    profile = run.profile
    sets = limit_sets(profile)
    return {
        'conditions': [
            ConditionVerdictSerializer(check_condition(profile, condition_id)).data
            for condition_id, _ in CONDITION_IDS
        ],
        'chi': finite_or_none(chi(profile)),
        'limit_sets': None if sets is None else [IntervalSerializer(interval).data for interval in sets],
        'nonsingularity_deficit': {
            'N': run.knobs['N'],
            'value': finite_or_none(nonsingularity_deficit(profile, run.knobs['N'])),
        },
        'limit_set_decay': _limit_set_decay(profile, sets),
        'equivalence_to_constant': ConditionVerdictSerializer(
            check_equivalence(profile, replace(profile, epsilon=EpsilonFamily.zero())),
        ).data,
    }, None


def _limit_set_decay(profile, sets):
    if sets is None or not sets[0].disjoint(sets[1]):
        return None
    return [LimitSetDecaySerializer(limit_set_decay(profile, n)).data for n in LIMIT_SET_SHIFTS]


@handler('asymptotics')
def asymptotics(run):
    n_grid, tol = tuple(run.knobs['n_grid']), run.knobs['tol']
    hellinger = fit_slope(HELLINGER_GROWTH, run.profile, n_grid, tol)
    try:
        rn = fit_slope(RN_SQUARE_INTEGRAL, run.profile, n_grid, tol)
    except NotApplicableError as exc:
        rn, refused = None, str(exc)
    else:
        refused = None
    rn_values = dict(rn.points) if rn else {}
    rows = [
        {
            'n': n,
            'hellinger_growth': finite_or_none(value),
            'inner_product': finite_or_none(math.exp(-0.5 * value)),
            'rn_square_integral': finite_or_none(rn_values.get(n)),
        }
        for n, value in hellinger.points
    ]
    series = dissipativity_series(run.profile, run.knobs['N'], n_grid, tol)
    body = {
        'dissipativity': DissipativitySeriesSerializer(series).data,
        'fits': {
            HELLINGER_GROWTH: SlopeFitSerializer(hellinger).data,
            RN_SQUARE_INTEGRAL: None if rn is None else SlopeFitSerializer(rn).data,
        },
        'refused': {RN_SQUARE_INTEGRAL: refused} if refused else {},
        'rows': rows,
    }
    return body, rows


def _criteria_kwargs(knobs):
    return {'N': knobs['N'], 'n_grid': tuple(knobs['n_grid']), 'tol': knobs['tol']}


@handler('classify')
def classify_command(run):
    return ClassificationReportSerializer(classify(run.profile, **_criteria_kwargs(run.knobs))).data, None


@handler('bracket')
def bracket(run):
    knobs = run.knobs
    result = bifurcation_bracket(
        run.profile, knobs['t_min'], knobs['t_max'], knobs['rtol'], **_criteria_kwargs(knobs),
    )
    return BracketSerializer(result).data, None


def _summary(summary):
    return ExperimentSummarySerializer(summary).data


@handler('clt')
def clt(run):
    knobs = run.knobs
    return _summary(clt_experiment(run.profile, knobs['n'], knobs['samples'], run.rng, knobs['workers'])), None


@handler('claim2')
def decay(run):
    knobs = run.knobs
    summary = decay_experiment(run.profile, knobs['samples'], run.rng, knobs['ns'], knobs['workers'])
    return _summary(summary), None


@handler('stopping')
def stopping(run):
    knobs = run.knobs
    summary = stopping_time_experiment(
        run.profile, knobs['r'], knobs['eps'], knobs['M'], knobs['N'], knobs['samples'], run.rng, knobs['workers'],
    )
    return _summary(summary), None


@handler('hopf')
def hopf(run):
    knobs = run.knobs
    summary = hopf_diagnostic(
        run.profile, knobs['N'], knobs['samples'], run.rng, knobs['workers'], knobs['beta'], knobs['window_tol'],
    )
    return _summary(summary), None


@handler('scan')
def scan(run):
    knobs = run.knobs
    summary = scan_intensity(
        run.profile, knobs['t_grid'], knobs['N'], knobs['samples'], run.rng, knobs['workers'],
        knobs['window_tol'], knobs['monotone_tol'],
    )
    body = _summary(summary)
    rows = body['statistics']['rows']
    if summary.statistics['anomaly']:
        raise AnomalyError('growth indicator is not monotone in the scale', report={**body, 'rows': rows})
    return {**body, 'rows': rows}, rows


@handler('tails')
def tails(run):
    knobs = run.knobs
    law = SkellamLaw(knobs['a'], knobs['b'])
    L = law.tail(knobs['L'])
    exact = law.tails_upto(knobs['l_max'])
    rows = [
        {'l': l, 'exact': finite_or_none(value), 'bound': finite_or_none(law.tail_bound(l)), 'l_pow_minus_8': l ** -8.0}
        for l, value in enumerate(exact, start=1)
    ]
    A = max(knobs['a'], knobs['b'])
    body = {
        'a': knobs['a'],
        'b': knobs['b'],
        'tail': {
            'L': knobs['L'],
            'exact': finite_or_none(L.exact),
            'bound': finite_or_none(L.bound),
            'exact_within_bound': L.exact <= L.bound,
        },
        'threshold': tail_threshold(A, closed=True) if A > 0 else None,
        'rows': rows,
    }
    return body, rows


@handler('continuous')
def continuous(run):
    densities, knobs = run.densities, run.knobs
    return {
        'bound': ContinuousBoundSerializer(continuous_base_bound(densities, knobs['N'])).data,
        'growth': [ContinuousGrowthSerializer(continuous_hellinger_growth(densities, n)).data for n in knobs['ns']],
    }, None


def apply_overrides(document, command=None, seed=None, out=None, fmt=None, workers=None):
    """Command-line flags take precedence over the run document."""
    if not isinstance(document, dict):
        raise ConfigError('a run document must be a JSON object')
    document = dict(document)
    if command is not None:
        if document.setdefault('command', command) != command:
            raise ConfigError(f"config is for {document['command']!r}, not {command!r}")
    for key, updates in (('rng', {'seed': seed}), ('output', {'path': out, 'format': fmt})):
        updates = {name: value for name, value in updates.items() if value is not None}
        if updates:
            current = document.get(key, {})
            if not isinstance(current, dict):
                raise ConfigError(f'{key} must be an object')
            document[key] = {**current, **updates}
    if workers is not None:
        if 'workers' in KNOB_DEFAULTS.get(document.get('command'), {}):
            document['knobs'] = {**document.get('knobs', {}), 'workers': workers}
        else:
            logger.warning('--workers ignored: %s runs no Monte Carlo streams', document.get('command'))
    return document


def parse(document):
    serializer = RunConfigSerializer(data=document)
    try:
        serializer.is_valid(raise_exception=True)
    except ValidationError as exc:
        raise ConfigError(f'invalid run document: {exc.detail}', errors=exc.detail) from exc
    data = serializer.validated_data
    knobs = dict(data['knobs'])
    if 'workers' in knobs and knobs['workers'] is None:
        knobs['workers'] = settings.LAB_WORKERS
    run = RunInput(
        command=data['command'],
        profile=data['profile']['profile'] if 'profile' in data else None,
        densities=data['densities']['profile'] if 'densities' in data else None,
        knobs=knobs,
        rng=RNGSpec(**data['rng']),
    )
    echo = {
        'command': run.command,
        'profile': None if run.profile is None else profile_to_document(run.profile),
        'densities': None if run.densities is None else DensityProfileSerializer(run.densities).data,
        'knobs': finite_tree(knobs),
        'rng': {'seed': run.rng.seed, 'stream': run.rng.stream},
        'output': dict(data['output']),
    }
    return run, echo


def execute(document, **overrides):
    """Run one document end to end; LabError subclasses carry the exit code."""
    run, echo = parse(apply_overrides(document, **overrides))
    path = Path(echo['output']['path'] or default_path(echo))
    fmt = echo['output']['format']
    record = Run.objects.create(command=run.command, config=echo, seed=run.rng.seed, report_path=str(path))
    logger.info('run %s: %s', record.pk, run.command)
    started = time.perf_counter()
    try:
        try:
            body, rows = HANDLERS[run.command](run)
        except AnomalyError as exc:
            report = None
            if exc.report is not None:
                body = finite_tree({'anomaly': exc.message, **exc.report})
                report = _report(echo, body, body.get('rows'), started)
                exc.details['report_path'] = str(report.write(path, fmt))
            _finish(record, exc.exit_code, report)
            raise
        report = _report(echo, body, rows, started)
        report.write(path, fmt)
    except AnomalyError:
        raise
    except LabError as exc:
        _finish(record, exc.exit_code)
        raise
    except Exception:
        _finish(record, LabError.exit_code)
        raise
    _finish(record, 0, report)
    return Outcome(record, report, path)


def _report(echo, body, rows, started):
    digest = body_digest(body)
    return Report(build_header(echo, time.perf_counter() - started, digest), body, rows)


def _finish(record, status, report=None):
    record.status = status
    fields = ['status']
    if report is not None:
        record.body_digest = report.header['body_sha256']
        fields.append('body_digest')
    else:
        record.report_path = ''
        fields.append('report_path')
    record.save(update_fields=fields)
