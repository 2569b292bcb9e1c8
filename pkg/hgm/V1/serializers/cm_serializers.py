from fractions import Fraction

from rest_framework import serializers


class ExactRationalField(serializers.CharField):
    """A "num/den" string in, a Fraction out."""

    default_error_messages = {"invalid_rational": "Not an exact rational: {value!r}."}

    def to_internal_value(self, data):
        text = super().to_internal_value(data)
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            self.fail("invalid_rational", value=text)

    def to_representation(self, value):
        value = Fraction(value)
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


class CMRecordSerializer(serializers.Serializer):
    t = ExactRationalField()
    j = ExactRationalField(required=False)
    order = serializers.CharField(allow_blank=False)
    D = serializers.IntegerField()
    field_m = serializers.IntegerField()
    disc_rk = serializers.IntegerField(required=False)
    ns_block = serializers.ListField(child=serializers.IntegerField(), min_length=3, max_length=3)

    def validate_t(self, value):
        if value == 0:
            raise serializers.ValidationError("t must be nonzero.")
        return value

    def validate_field_m(self, value):
        if value == 0:
            raise serializers.ValidationError("field_m must be nonzero.")
        return value

    def validate(self, attrs):
        rational = self.context.get("kind") == "rational"
        if rational and "j" not in attrs:
            raise serializers.ValidationError({"j": "Rational rows carry their j-invariant."})
        if not rational and "disc_rk" not in attrs:
            raise serializers.ValidationError({"disc_rk": "Quadratic rows carry their discriminant."})
        return attrs


class CMTablesSerializer(serializers.Serializer):
    version = serializers.IntegerField(min_value=1)
    rational_cm_j = serializers.ListField(child=ExactRationalField(), min_length=13, max_length=13)
    rational = serializers.ListField(child=serializers.DictField())
    quadratic = serializers.ListField(child=serializers.DictField())

    def _rows(self, rows, kind):
        serializer = CMRecordSerializer(data=rows, many=True, context={"kind": kind})
        serializer.is_valid(raise_exception=True)
        return serializer.validated_data

    def validate(self, attrs):
        attrs["rational"] = self._rows(attrs["rational"], "rational")
        attrs["quadratic"] = self._rows(attrs["quadratic"], "quadratic")
        return attrs
