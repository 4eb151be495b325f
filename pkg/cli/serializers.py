from rest_framework import serializers

from criteria.certificates import DEFAULT_SERIES_N
from criteria.fits import DEFAULT_N_GRID
from criteria.serializers import DensityProfileSerializer
from criteria.series import DEFAULT_TOL
from intensity.serializers import IntensityProfileSerializer
from simulate.configurations import WINDOW_TOL
from simulate.experiments import DECAY_NS, MONOTONE_TOL
from simulate.serializers import RNGSpecSerializer
from suspensionlab.serializers import StrictSerializer

from .models import COMMANDS

JSON = 'json'
CSV = 'csv'
FORMATS = [(JSON, 'JSON'), (CSV, 'CSV')]

# Commands whose body is a per-n or per-t table.
CSV_COMMANDS = ('asymptotics', 'scan', 'tails')

# Commands that run without an intensity profile.
PROFILE_FREE = ('tails', 'continuous')

SCAN_GRID = (0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 4.0, 8.0)

# Knob defaults; a knob left out of the config takes the value listed for its command.
KNOB_DEFAULTS = {
    'check': {'N': DEFAULT_SERIES_N},
    'asymptotics': {'N': DEFAULT_SERIES_N, 'n_grid': list(DEFAULT_N_GRID), 'tol': DEFAULT_TOL},
    'classify': {'N': DEFAULT_SERIES_N, 'n_grid': list(DEFAULT_N_GRID), 'tol': DEFAULT_TOL},
    'bracket': {
        'N': DEFAULT_SERIES_N, 'n_grid': list(DEFAULT_N_GRID), 'tol': DEFAULT_TOL,
        't_min': 2.0 ** -10, 't_max': 2.0 ** 10, 'rtol': 1e-3,
    },
    'clt': {'n': 10 ** 4, 'samples': 10 ** 4, 'workers': None},
    'claim2': {'ns': list(DECAY_NS), 'samples': 10 ** 5, 'workers': None},
    'stopping': {'r': -2.0, 'eps': 0.1, 'M': 10 ** 4, 'N': 10 ** 6, 'samples': 200, 'workers': None},
    'hopf': {'N': 256, 'samples': 1000, 'beta': 1.0, 'window_tol': WINDOW_TOL, 'workers': None},
    'scan': {
        't_grid': list(SCAN_GRID), 'N': 256, 'samples': 200, 'window_tol': WINDOW_TOL,
        'monotone_tol': MONOTONE_TOL, 'workers': None,
    },
    'tails': {'a': 0.5, 'b': 0.5, 'L': 10, 'l_max': 30},
    'continuous': {'N': DEFAULT_SERIES_N, 'ns': [1, 10, 100, 1000]},
}


class KnobsSerializer(StrictSerializer):
    N = serializers.IntegerField(min_value=1, required=False)
    n = serializers.IntegerField(min_value=2, required=False)
    samples = serializers.IntegerField(min_value=1, required=False)
    workers = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    n_grid = serializers.ListField(child=serializers.IntegerField(min_value=1), min_length=4, required=False)
    ns = serializers.ListField(child=serializers.IntegerField(min_value=1), min_length=1, required=False)
    t_grid = serializers.ListField(child=serializers.FloatField(min_value=0), min_length=1, required=False)
    t_min = serializers.FloatField(min_value=0, required=False)
    t_max = serializers.FloatField(min_value=0, required=False)
    rtol = serializers.FloatField(min_value=0, required=False)
    tol = serializers.FloatField(min_value=0, required=False)
    window_tol = serializers.FloatField(min_value=0, required=False)
    monotone_tol = serializers.FloatField(min_value=0, required=False)
    beta = serializers.FloatField(min_value=0, required=False)
    r = serializers.FloatField(required=False)
    eps = serializers.FloatField(required=False)
    M = serializers.IntegerField(min_value=1, required=False)
    a = serializers.FloatField(min_value=0, required=False)
    b = serializers.FloatField(min_value=0, required=False)
    L = serializers.IntegerField(min_value=1, required=False)
    l_max = serializers.IntegerField(min_value=1, required=False)


class OutputSerializer(StrictSerializer):
    path = serializers.CharField(required=False, allow_blank=True, default='')
    format = serializers.ChoiceField(choices=FORMATS, required=False, default=JSON)


class RunConfigSerializer(StrictSerializer):
    """One run document: command, profile or densities, knobs, rng and output."""

    command = serializers.ChoiceField(choices=COMMANDS)
    profile = IntensityProfileSerializer(required=False)
    densities = DensityProfileSerializer(required=False)
    knobs = KnobsSerializer(required=False, default=dict)
    rng = RNGSpecSerializer(required=False, default=lambda: {'seed': 0, 'stream': 0})
    output = OutputSerializer(required=False, default=lambda: {'path': '', 'format': JSON})

    def validate(self, attrs):
        command = attrs['command']
        if command == 'continuous':
            if 'densities' not in attrs:
                raise serializers.ValidationError({'densities': ['Required for the continuous command.']})
        elif command not in PROFILE_FREE and 'profile' not in attrs:
            raise serializers.ValidationError({'profile': [f'Required for the {command} command.']})
        unused = sorted(set(attrs['knobs']) - set(KNOB_DEFAULTS[command]))
        if unused:
            raise serializers.ValidationError({'knobs': [f'Not used by {command}: {", ".join(unused)}.']})
        if attrs['output']['format'] == CSV and command not in CSV_COMMANDS:
            raise serializers.ValidationError({'output': [f'CSV is offered for {", ".join(CSV_COMMANDS)}.']})
        attrs['knobs'] = {**KNOB_DEFAULTS[command], **attrs['knobs']}
        return attrs

