from rest_framework import serializers

from .services import ExtractionKind, InnerKind


class SolveOptionsSerializer(serializers.Serializer):
    model = serializers.CharField()
    solver = serializers.ChoiceField(choices=["brute", "sa", "hybrid"], default="sa")
    strategy = serializers.ChoiceField(choices=[k.value for k in ExtractionKind], default="random")
    subset_size = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    k = serializers.IntegerField(min_value=1, max_value=4, default=2)
    iterations = serializers.IntegerField(min_value=0, default=50)
    inner = serializers.ChoiceField(choices=[k.value for k in InnerKind], default="exact")
    sweeps = serializers.IntegerField(min_value=1, default=1000)
    initial_temp = serializers.FloatField(min_value=0.0, default=10.0)
    final_temp = serializers.FloatField(min_value=0.0, default=0.01)
    out = serializers.CharField(default="solution.json")

    def validate(self, attrs: dict) -> dict:
        if attrs["solver"] == "hybrid" and not attrs.get("subset_size"):
            raise serializers.ValidationError({"subset_size": "Required for the hybrid solver."})
        if attrs["final_temp"] <= 0 or attrs["initial_temp"] < attrs["final_temp"]:
            raise serializers.ValidationError(
                {"final_temp": "Temperatures must satisfy initial_temp >= final_temp > 0."}
            )
        return attrs


class SolutionSerializer(serializers.Serializer):
    assignment = serializers.ListField(child=serializers.IntegerField(min_value=0, max_value=1))
    value = serializers.FloatField()
    evaluations = serializers.IntegerField(min_value=0)
