"""
Intensity profiles a_n = scale * base * exp(eps_n) on the integers.

The epsilon families carry enough structure (limits, where they start and
stop varying, tail decay) for the criteria and simulate apps to size their
sums and windows without guessing.
"""
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .exceptions import ProfileError

ZERO = 'zero'
POWER = 'power'
STEP = 'step'
EXPLICIT = 'explicit'

FAMILY_KINDS = [
    (ZERO, 'Zero'),
    (POWER, 'Power'),
    (STEP, 'Step'),
    (EXPLICIT, 'Explicit table'),
]


@dataclass(frozen=True)
class EpsilonFamily:
    """
    Perturbation sequence eps_n.

    power: eps_n = sign * n**-gamma for n > 1 and 0 for n <= 1.
    step: eps_n = left for n <= 0 and right for n >= 1.
    explicit: finite table of (n, eps_n) over an optional tail family; without
    a tail the sequence is 0 off the table and its convergence is undetermined.
    """

    kind: str = ZERO
    gamma: float | None = None
    sign: int = -1
    left: float = 0.0
    right: float = 0.0
    table: tuple = field(default=())
    tail: 'EpsilonFamily | None' = None

    def __post_init__(self):
        if self.kind not in dict(FAMILY_KINDS):
            raise ProfileError(f'Unknown epsilon family {self.kind!r}')
        if self.kind == POWER:
            if self.gamma is None or not self.gamma > 0:
                raise ProfileError(f'power family needs gamma > 0, got {self.gamma}')
            if self.sign not in (-1, 1):
                raise ProfileError(f'power family sign must be +1 or -1, got {self.sign}')
        if self.kind == STEP and not (math.isfinite(self.left) and math.isfinite(self.right)):
            raise ProfileError('step family needs finite left and right values')
        if self.kind == EXPLICIT:
            if self.tail is not None and self.tail.kind == EXPLICIT:
                raise ProfileError('explicit tables cannot be nested')
            object.__setattr__(self, 'table', tuple(sorted((int(n), float(e)) for n, e in self.table)))

    @classmethod
    def zero(cls):
        return cls(kind=ZERO)

    @classmethod
    def power(cls, gamma, sign=-1):
        return cls(kind=POWER, gamma=float(gamma), sign=int(sign))

    @classmethod
    def step(cls, left, right):
        return cls(kind=STEP, left=float(left), right=float(right))

    @classmethod
    def explicit(cls, table, tail=None):
        items = table.items() if isinstance(table, dict) else table
        return cls(kind=EXPLICIT, table=tuple(items), tail=tail)

    def epsilon(self, ks):
        ks = np.asarray(ks)
        if self.kind == ZERO:
            return np.zeros(ks.shape)
        if self.kind == POWER:
            safe = np.maximum(ks, 2).astype(float)
            return np.where(ks > 1, self.sign * safe ** -self.gamma, 0.0)
        if self.kind == STEP:
            return np.where(ks <= 0, self.left, self.right)
        values = self.tail.epsilon(ks) if self.tail else np.zeros(ks.shape)
        values = np.array(values, dtype=float)
        for n, eps in self.table:
            values[ks == n] = eps
        return values

    def epsilon_at(self, n):
        return float(self.epsilon(np.array([n]))[0])

    @property
    def declared(self):
        """False for explicit tables without a tail family."""
        return self.kind != EXPLICIT or self.tail is not None

    @property
    def limits(self):
        """(eps at -inf, eps at +inf), or None when undeclared."""
        if self.kind in (ZERO, POWER):
            return 0.0, 0.0
        if self.kind == STEP:
            return self.left, self.right
        return self.tail.limits if self.tail else None

    @property
    def decay(self):
        """Exponent gamma of the right tail, None when eventually constant."""
        if self.kind == POWER:
            return self.gamma
        if self.kind == EXPLICIT and self.tail is not None:
            return self.tail.decay
        return None

    @property
    def first_active(self):
        """Smallest n where eps_n may differ from its left limit; None if never."""
        if self.kind == ZERO:
            return None
        if self.kind == POWER:
            return 2
        if self.kind == STEP:
            return None if self.left == self.right else 1
        starts = [n for n, _ in self.table]
        if self.tail is not None and self.tail.first_active is not None:
            starts.append(self.tail.first_active)
        return min(starts) if starts else None

    @property
    def last_active(self):
        """Largest n where eps_n may differ from its right limit; None if never constant."""
        if self.kind in (ZERO, POWER):
            return None
        if self.kind == STEP:
            return None if self.left == self.right else 0
        if self.tail is not None and self.tail.kind == POWER:
            return None
        ends = [n for n, _ in self.table]
        if self.tail is not None and self.tail.last_active is not None:
            ends.append(self.tail.last_active)
        return max(ends) if ends else None

    def power_tail(self):
        """The power family governing the right tail, if any."""
        if self.kind == POWER:
            return self
        if self.kind == EXPLICIT and self.tail is not None and self.tail.kind == POWER:
            return self.tail
        return None


DEFAULT_FAMILY = EpsilonFamily.power(0.5, -1)


@dataclass(frozen=True)
class IntensityProfile:
    base: float
    epsilon: EpsilonFamily = DEFAULT_FAMILY
    scale: float = 1.0

    def __post_init__(self):
        for name in ('base', 'scale'):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ProfileError(f'{name} must be a positive real, got {value}')

    @property
    def amplitude(self):
        """scale * base; both criteria series are linear in it."""
        return self.scale * self.base

    def intensity(self, n):
        return self.amplitude * math.exp(self.epsilon.epsilon_at(n))

    def intensities(self, ks):
        return self.amplitude * np.exp(self.epsilon.epsilon(ks))

    def rescaled(self, t):
        return replace(self, scale=self.scale * t)

    def unit(self):
        """Same epsilon family at amplitude 1."""
        return IntensityProfile(base=1.0, epsilon=self.epsilon, scale=1.0)

    def rn_support(self, n, tol=1e-2):
        """
        Inclusive (lo, hi) range of k where a_k != a_{k-n} can matter, or None.

        For power tails hi is where the remaining log-RN contribution of a
        Poisson window drops below standard deviation tol.
        """
        family = self.epsilon
        if n == 0 or family.first_active is None:
            return None
        lo = family.first_active
        last = family.last_active
        if last is not None:
            return lo, last + n
        gamma = family.decay
        cutoff = (self.amplitude * gamma ** 2 * n ** 2 / ((2 * gamma + 1) * tol ** 2)) ** (1 / (2 * gamma + 1))
        hi = max(n + lo, int(math.ceil(cutoff)))
        if family.kind == EXPLICIT and family.table:
            hi = max(hi, family.table[-1][0] + n)
        return lo, hi


def eval_intensity(profile, n):
    return profile.intensity(n)
