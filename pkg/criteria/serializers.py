from rest_framework import serializers

from intensity.serializers import ConditionVerdictSerializer, profile_to_document
from suspensionlab.serializers import FiniteFloatField, StrictSerializer, finite_tree

from .certificates import Certificate
from .continuous import DensityProfile
from .exceptions import NotApplicableError


class SlopeFitSerializer(serializers.Serializer):
    kind = serializers.CharField()
    slope = FiniteFloatField()
    intercept = FiniteFloatField()
    correction = FiniteFloatField()
    residual = FiniteFloatField()
    stderr = FiniteFloatField()
    n_range = serializers.ListField(child=serializers.IntegerField())
    points = serializers.SerializerMethodField()

    def get_points(self, obj):
        return [{'n': n, 'value': value} for n, value in finite_tree(obj.points)]


class CertificateSerializer(serializers.Serializer):
    kind = serializers.CharField()
    values = serializers.SerializerMethodField()
    fit = serializers.SerializerMethodField()

    def get_values(self, obj):
        return finite_tree(obj.values)

    def get_fit(self, obj):
        return None if obj.fit is None else SlopeFitSerializer(obj.fit).data


class ClassificationReportSerializer(serializers.Serializer):
    verdict = serializers.CharField()
    certificate = serializers.SerializerMethodField()
    profile = serializers.SerializerMethodField()
    evidence = serializers.SerializerMethodField()

    def get_certificate(self, obj):
        return None if obj.certificate is None else CertificateSerializer(obj.certificate).data

    def get_profile(self, obj):
        return profile_to_document(obj.profile)

    def get_evidence(self, obj):
        return [
            CertificateSerializer(item).data if isinstance(item, Certificate) else ConditionVerdictSerializer(item).data
            for item in obj.evidence
        ]


class DissipativitySeriesSerializer(serializers.Serializer):
    N = serializers.IntegerField()
    partial = FiniteFloatField()
    convergent = serializers.CharField()
    verdict = serializers.CharField()
    fit = SlopeFitSerializer()


class BracketSerializer(serializers.Serializer):
    t_lower = FiniteFloatField()
    t_upper = FiniteFloatField()
    lower_report = ClassificationReportSerializer()
    upper_report = ClassificationReportSerializer()
    scan = serializers.SerializerMethodField()

    def get_scan(self, obj):
        return [{'t': finite_tree(t), 'verdict': report.verdict} for t, report in obj.scan]


class LimitSetDecaySerializer(serializers.Serializer):
    n = serializers.IntegerField()
    inner_product = FiniteFloatField()
    middle_product = FiniteFloatField()
    middle_factors = serializers.IntegerField()
    delta = FiniteFloatField()
    bound = FiniteFloatField()


class ContinuousBoundSerializer(serializers.Serializer):
    chi = FiniteFloatField()
    D = FiniteFloatField()
    N = serializers.IntegerField()
    series_partial = FiniteFloatField()
    dissipative = serializers.CharField()


class ContinuousGrowthSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    growth = FiniteFloatField()
    lower_bound = FiniteFloatField()


class DensityProfileSerializer(StrictSerializer):
    """{"left": [...], "right": [...], "window": [[...], ...], "offset": k}"""

    left = serializers.ListField(child=serializers.FloatField(), min_length=1)
    right = serializers.ListField(child=serializers.FloatField(), min_length=1)
    window = serializers.ListField(
        child=serializers.ListField(child=serializers.FloatField(), min_length=1), required=False, default=list,
    )
    offset = serializers.IntegerField(required=False, default=0)

    def validate(self, attrs):
        try:
            attrs['profile'] = DensityProfile.from_rows(attrs['left'], attrs['right'], attrs['window'], attrs['offset'])
        except NotApplicableError as exc:
            raise serializers.ValidationError(str(exc)) from exc
        return attrs

    def create(self, validated_data):
        return validated_data['profile']

    def to_representation(self, instance):
        return {
            'left': list(instance.left),
            'right': list(instance.right),
            'window': [list(row) for row in instance.window],
            'offset': instance.offset,
        }


def densities_from_document(document):
    serializer = DensityProfileSerializer(data=document)
    serializer.is_valid(raise_exception=True)
    return serializer.save()
