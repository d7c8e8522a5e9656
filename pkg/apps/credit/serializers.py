from rest_framework import serializers

from .services import SelectionSolver


class CreditRunOptionsSerializer(serializers.Serializer):
    data = serializers.CharField()
    alpha = serializers.FloatField(min_value=0.0, default=0.5)
    beta = serializers.FloatField(min_value=0.0, default=2.0)
    big_m = serializers.FloatField(min_value=0.0, default=10.0)
    threshold = serializers.FloatField(min_value=0.0, max_value=1.0, default=0.01)
    trees = serializers.IntegerField(min_value=1, default=100)
    max_depth = serializers.IntegerField(min_value=1, default=8)
    test_fraction = serializers.FloatField(min_value=0.05, max_value=0.95, default=0.3)
    solver = serializers.ChoiceField(choices=[k.value for k in SelectionSolver], default=SelectionSolver.AUTO.value)
    sweeps = serializers.IntegerField(min_value=1, default=1000)
    lr = serializers.FloatField(min_value=1e-6, default=0.1)
    epochs = serializers.IntegerField(min_value=0, default=500)
    l2 = serializers.FloatField(min_value=0.0, default=1e-3)
    out = serializers.CharField(default="report.json")
