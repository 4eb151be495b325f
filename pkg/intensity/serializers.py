from rest_framework import serializers

from suspensionlab.serializers import StrictSerializer, finite_or_none

from .exceptions import ProfileError
from .families import (
    DEFAULT_FAMILY, EXPLICIT, FAMILY_KINDS, POWER, STEP, EpsilonFamily, IntensityProfile,
)


class EpsilonFamilySerializer(StrictSerializer):
    kind = serializers.ChoiceField(choices=FAMILY_KINDS)
    gamma = serializers.FloatField(required=False)
    sign = serializers.ChoiceField(choices=[(-1, '-1'), (1, '+1')], required=False)
    left = serializers.FloatField(required=False)
    right = serializers.FloatField(required=False)
    table = serializers.DictField(child=serializers.FloatField(), required=False)
    tail = serializers.DictField(required=False, allow_null=True)

    def validate_table(self, value):
        try:
            return {int(n): eps for n, eps in value.items()}
        except ValueError as exc:
            raise serializers.ValidationError('Table keys must be integers.') from exc

    def validate_tail(self, value):
        if value is None:
            return None
        nested = EpsilonFamilySerializer(data=value)
        nested.is_valid(raise_exception=True)
        return nested.validated_data

    def validate(self, attrs):
        try:
            attrs['family'] = self.build(attrs)
        except ProfileError as exc:
            raise serializers.ValidationError(str(exc)) from exc
        return attrs

    @classmethod
    def build(cls, attrs):
        kind = attrs['kind']
        if kind == POWER:
            if 'gamma' not in attrs:
                raise ProfileError('power family needs gamma')
            return EpsilonFamily.power(attrs['gamma'], attrs.get('sign', -1))
        if kind == STEP:
            return EpsilonFamily.step(attrs.get('left', 0.0), attrs.get('right', 0.0))
        if kind == EXPLICIT:
            tail = attrs.get('tail')
            return EpsilonFamily.explicit(attrs.get('table', {}), tail['family'] if tail else None)
        return EpsilonFamily.zero()

    def create(self, validated_data):
        return validated_data['family']

    def to_representation(self, instance):
        data = {'kind': instance.kind}
        if instance.kind == POWER:
            data.update(gamma=instance.gamma, sign=instance.sign)
        elif instance.kind == STEP:
            data.update(left=instance.left, right=instance.right)
        elif instance.kind == EXPLICIT:
            data['table'] = {str(n): eps for n, eps in instance.table}
            data['tail'] = None if instance.tail is None else self.to_representation(instance.tail)
        return data


class IntensityProfileSerializer(StrictSerializer):
    """{"base": a, "scale": t, "epsilon": {...}}; epsilon defaults to power(1/2, -1)."""

    base = serializers.FloatField()
    scale = serializers.FloatField(required=False, default=1.0)
    epsilon = EpsilonFamilySerializer(required=False)

    def validate(self, attrs):
        family = attrs['epsilon']['family'] if 'epsilon' in attrs else DEFAULT_FAMILY
        try:
            attrs['profile'] = IntensityProfile(base=attrs['base'], epsilon=family, scale=attrs['scale'])
        except ProfileError as exc:
            raise serializers.ValidationError(str(exc)) from exc
        return attrs

    def create(self, validated_data):
        return validated_data['profile']

    def to_representation(self, instance):
        return {
            'base': instance.base,
            'scale': instance.scale,
            'epsilon': EpsilonFamilySerializer(instance.epsilon).data,
        }


def profile_from_document(document):
    serializer = IntensityProfileSerializer(data=document)
    serializer.is_valid(raise_exception=True)
    return serializer.save()


def profile_to_document(profile):
    return IntensityProfileSerializer(profile).data


class PartialSumSerializer(serializers.Serializer):
    series = serializers.CharField()
    N = serializers.IntegerField()
    value = serializers.SerializerMethodField()

    def get_value(self, obj):
        return finite_or_none(obj.value)


class ConditionVerdictSerializer(serializers.Serializer):
    condition_id = serializers.CharField()
    holds = serializers.CharField()
    evidence = PartialSumSerializer(many=True)


class IntervalSerializer(serializers.Serializer):
    lo = serializers.FloatField()
    hi = serializers.FloatField()
