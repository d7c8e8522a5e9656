from rest_framework import serializers

from .services import PRESETS, LossKind


class DigitsField(serializers.Field):
    """Comma-separated digits, e.g. "3,6"."""

    def to_internal_value(self, data: object) -> tuple[int, ...]:
        try:
            digits = tuple(int(part) for part in str(data).split(","))
        except ValueError as e:
            raise serializers.ValidationError("Expected comma-separated digits such as 3,6.") from e
        if len(digits) < 2 or len(set(digits)) != len(digits) or not all(0 <= d <= 9 for d in digits):
            raise serializers.ValidationError("Expected at least two distinct digits between 0 and 9.")
        return digits

    def to_representation(self, value: tuple[int, ...]) -> str:
        return ",".join(str(d) for d in value)


class PreprocessOptionsSerializer(serializers.Serializer):
    images = serializers.CharField()
    labels = serializers.CharField()
    digits = DigitsField(default=(3, 6))
    size = serializers.IntegerField(min_value=1, max_value=64, default=8)
    threshold = serializers.FloatField(min_value=0.0, max_value=1.0, default=0.5)
    out = serializers.CharField(default="dataset")

    def validate_size(self, value: int) -> int:
        if value & (value - 1):
            raise serializers.ValidationError("Size must be a power of two.")
        return value


class EncodeOptionsSerializer(serializers.Serializer):
    dataset = serializers.CharField()
    index = serializers.IntegerField(min_value=0, default=0)
    compressed = serializers.BooleanField(default=False)
    decompose = serializers.BooleanField(default=False)
    dump = serializers.CharField(default="circuit.txt")


class VerifyOptionsSerializer(serializers.Serializer):
    circuit = serializers.CharField()
    dataset = serializers.CharField()
    index = serializers.IntegerField(min_value=0, default=0)
    compressed = serializers.BooleanField(default=False)
    tolerance = serializers.FloatField(min_value=0.0, default=1e-10)


class TrainOptionsSerializer(serializers.Serializer):
    dataset = serializers.CharField()
    config = serializers.ChoiceField(choices=sorted(PRESETS))
    loss = serializers.ChoiceField(choices=[k.value for k in LossKind], default=LossKind.HINGE.value)
    epochs = serializers.IntegerField(min_value=0, default=30)
    folds = serializers.IntegerField(min_value=2, default=10)
    lr = serializers.FloatField(default=0.05)
    batch_size = serializers.IntegerField(min_value=1, default=32)
    subset = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    val_data = serializers.CharField(required=False, allow_null=True)
    val_subset = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    out = serializers.CharField(default="history.csv")

    def validate_lr(self, value: float) -> float:
        if not value > 0:
            raise serializers.ValidationError("Learning rate must be > 0.")
        return value

    def validate(self, attrs: dict) -> dict:
        if attrs.get("val_subset") and not attrs.get("val_data"):
            raise serializers.ValidationError({"val_subset": "Only valid together with --val-data."})
        return attrs


class TrainHistorySerializer(serializers.Serializer):
    fold = serializers.IntegerField(min_value=0)
    train_loss = serializers.ListField(child=serializers.FloatField())
    val_accuracy = serializers.ListField(child=serializers.FloatField(min_value=0.0, max_value=1.0))
    initial_val_accuracy = serializers.FloatField(min_value=0.0, max_value=1.0)
    config = serializers.DictField()
