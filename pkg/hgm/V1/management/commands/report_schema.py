from django.conf import settings

from ...serializers.record_serializers import RECORD_FIELDS
from ._base import HgmCommand

FIELD_TYPES = {
    "schema_version": "string",
    "check": "string",
    "q": ["integer", "null"],
    "t": ["string", "null"],
    "map": ["string", "null"],
    "variant": "string",
    "pass": "boolean",
    "skipped": "boolean",
    "reason": "string",
    "lhs": ["string", "null"],
    "rhs": ["string", "null"],
    "residual": ["number", "null"],
    "timing": ["number", "null"],
}


class Command(HgmCommand):
    help = "Print the JSON schema of verification records"

    def handle(self, *args, **options):
        fields = list(RECORD_FIELDS) + ["timing"]
        self.emit_json({
            "$schema": "https://json-schema.org/draft/2020-12/schema",
            "title": "verification record",
            "version": settings.HGMK3_SCHEMA_VERSION,
            "type": "object",
            "properties": {name: {"type": FIELD_TYPES[name]} for name in fields},
            "required": list(RECORD_FIELDS),
            "field_order": fields,
            "csv_header": list(RECORD_FIELDS),
        })
