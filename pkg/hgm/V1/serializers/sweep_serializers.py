from django.conf import settings
from rest_framework import serializers
from sympy import factorint

from .cm_serializers import ExactRationalField

GRID_CHECKS = ('gauss', 'bcm', 'lemma', 'trace', 'main', 'curve-theorem', 'delta', 'sym2', 'conic')
RANDOM_CHECKS = ('maps', 'si-params', 'qt', 'x0-2', 'j-match')
DEFAULT_T = ('2', '3', '5/2', '-1', '7', '81/256', '-9/16', '10')


class SweepConfigSerializer(serializers.Serializer):
    check = serializers.ChoiceField(choices=GRID_CHECKS + RANDOM_CHECKS)
    q = serializers.ListField(child=serializers.IntegerField(min_value=3), required=False)
    pmin = serializers.IntegerField(min_value=3, default=3)
    pmax = serializers.IntegerField(min_value=3, required=False)
    prime_powers = serializers.BooleanField(default=False)
    t = serializers.ListField(child=ExactRationalField(), required=False)
    seed = serializers.IntegerField(required=False)
    precision = serializers.IntegerField(min_value=53, required=False)
    output_format = serializers.ChoiceField(choices=('json', 'csv'), default='json')
    jobs = serializers.IntegerField(min_value=1, required=False)
    trials = serializers.IntegerField(min_value=1, default=100)
    bits = serializers.IntegerField(min_value=40, default=62)
    only = serializers.CharField(required=False, allow_blank=False)
    include_timing = serializers.BooleanField(default=False)

    def validate_q(self, value):
        if not value:
            raise serializers.ValidationError("Give at least one q.")
        for q in value:
            factors = factorint(q)
            if len(factors) != 1 or 2 in factors:
                raise serializers.ValidationError(f"q={q} is not an odd prime power.")
            if q > settings.HGMK3_FIELD_BOUND:
                raise serializers.ValidationError(f"q={q} is above the field bound {settings.HGMK3_FIELD_BOUND}.")
        return sorted(set(value))

    def validate_t(self, value):
        if not value:
            raise serializers.ValidationError("The t list is empty.")
        if any(t == 0 for t in value):
            raise serializers.ValidationError("t must be nonzero.")
        return sorted(set(value))

    def validate_only(self, value):
        from ..engine.catalog import CATALOG

        if value not in CATALOG:
            raise serializers.ValidationError(f"Unknown map {value!r}.")
        return value

    def validate(self, attrs):
        attrs.setdefault('seed', settings.HGMK3_SEED)
        attrs.setdefault('precision', settings.HGMK3_PRECISION)
        attrs.setdefault('jobs', settings.HGMK3_JOBS)
        if attrs['check'] in RANDOM_CHECKS:
            return attrs
        if 'q' in attrs and 'pmax' in attrs:
            raise serializers.ValidationError("Give either q or a prime range, not both.")
        if 'q' not in attrs:
            if 'pmax' not in attrs:
                raise serializers.ValidationError({'pmax': "A grid check needs q or pmax."})
            if attrs['pmax'] < attrs['pmin']:
                raise serializers.ValidationError({'pmax': "pmax is below pmin."})
        attrs.setdefault('t', sorted({ExactRationalField().to_internal_value(t) for t in DEFAULT_T}))
        return attrs
