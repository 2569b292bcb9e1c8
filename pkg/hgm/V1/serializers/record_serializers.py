from django.conf import settings
from rest_framework import serializers

from ..models import SweepRun, VerificationRecord

RECORD_FIELDS = ('schema_version', 'check', 'q', 't', 'map', 'variant', 'pass', 'skipped',
                 'reason', 'lhs', 'rhs', 'residual')


class VerificationRecordSerializer(serializers.ModelSerializer):
    """Renders records in the stable report order; ``timing`` and ``details`` are opt-in through context."""

    schema_version = serializers.SerializerMethodField()
    check = serializers.CharField(source='check_name')
    map = serializers.CharField(source='map_name', allow_null=True, required=False)

    class Meta:
        model = VerificationRecord
        fields = ('schema_version', 'check', 'q', 't', 'map', 'variant', 'passed', 'skipped',
                  'reason', 'lhs', 'rhs', 'residual', 'timing', 'details')

    def get_schema_version(self, obj):
        return settings.HGMK3_SCHEMA_VERSION

    def get_fields(self):
        fields = super().get_fields()
        renamed = {}
        for name, field in fields.items():
            if name == 'passed':
                field.source = 'passed'
                name = 'pass'
            renamed[name] = field
        if not self.context.get('include_timing'):
            renamed.pop('timing')
        if not self.context.get('include_details'):
            renamed.pop('details')
        return renamed


class SweepRunSerializer(serializers.ModelSerializer):
    records = VerificationRecordSerializer(many=True, read_only=True)

    class Meta:
        model = SweepRun
        fields = ('id', 'command', 'check_name', 'config', 'seed', 'output_format', 'jobs',
                  'total', 'failed', 'skipped', 'started_on', 'finished_on', 'records')
