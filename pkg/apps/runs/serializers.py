from rest_framework import serializers

from .models import RunRecord


class RunRecordSerializer(serializers.ModelSerializer):
    succeeded = serializers.BooleanField(read_only=True)

    class Meta:
        model = RunRecord
        fields = [
            "id",
            "command",
            "argv",
            "config",
            "seeds",
            "dataset_digests",
            "metrics",
            "artifacts",
            "status",
            "succeeded",
            "error",
            "exit_code",
            "duration_seconds",
            "created_at",
        ]
        read_only_fields = fields


class GlobalOptionsSerializer(serializers.Serializer):
    seed = serializers.IntegerField(min_value=0, max_value=2**63 - 1)
    out_dir = serializers.CharField()
    threads = serializers.IntegerField(min_value=1, max_value=256)
