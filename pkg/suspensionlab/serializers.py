import math
import numbers

import numpy as np
from rest_framework import serializers


class StrictSerializer(serializers.Serializer):
    """Serializer that refuses keys it does not declare."""

    def to_internal_value(self, data):
        if isinstance(data, dict):
            unknown = sorted(set(data) - set(self.fields))
            if unknown:
                raise serializers.ValidationError(
                    {key: ['Unknown field.'] for key in unknown}
                )
        return super().to_internal_value(data)

    # Value objects are built by the callers; Serializer.save() is not used.
    def create(self, validated_data):
        raise NotImplementedError

    def update(self, instance, validated_data):
        raise NotImplementedError


def finite_or_none(value):
    """JSON has no inf/nan; reports carry null instead."""
    if value is None:
        return None
    value = float(value)
    if not math.isfinite(value):
        return None
    return value


class FiniteFloatField(serializers.FloatField):
    def to_representation(self, value):
        return finite_or_none(value)


def finite_tree(value):
    """finite_or_none applied through nested dicts, lists and tuples."""
    if isinstance(value, dict):
        return {str(key): finite_tree(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [finite_tree(item) for item in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if value is None or isinstance(value, str):
        return value
    if isinstance(value, numbers.Integral):
        return int(value)
    return finite_or_none(value)
