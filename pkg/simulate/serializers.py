from rest_framework import serializers

from suspensionlab.serializers import StrictSerializer, finite_tree

from .rng import MAX_SEED, RNGSpec


class RNGSpecSerializer(StrictSerializer):
    seed = serializers.IntegerField(min_value=0, max_value=MAX_SEED - 1)
    stream = serializers.IntegerField(min_value=0, required=False, default=0)

    def create(self, validated_data):
        return RNGSpec(**validated_data)

    def to_representation(self, instance):
        return {'seed': instance.seed, 'stream': instance.stream}


class ExperimentSummarySerializer(serializers.Serializer):
    """Report body of an experiment; runtime is left to the report header."""

    name = serializers.CharField()
    label = serializers.CharField(allow_null=True)
    parameters = serializers.SerializerMethodField()
    statistics = serializers.SerializerMethodField()
    rng = RNGSpecSerializer()
    streams = serializers.IntegerField()
    children = serializers.SerializerMethodField()

    def get_parameters(self, obj):
        return finite_tree(obj.parameters)

    def get_statistics(self, obj):
        return finite_tree(obj.statistics)

    def get_children(self, obj):
        return [ExperimentSummarySerializer(child).data for child in obj.children]
