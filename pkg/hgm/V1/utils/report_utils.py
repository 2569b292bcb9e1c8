import io
import json

import pandas as pd
from django.db import transaction
from django.utils import timezone

from ..models import SweepRun, VerificationRecord, record_from_report
from ..serializers.record_serializers import RECORD_FIELDS, VerificationRecordSerializer


def _context(include_timing=False, include_details=False):
    return {"include_timing": include_timing, "include_details": include_details}


def serialize_reports(reports, include_timing=False, include_details=False):
    records = [record_from_report(report) for report in reports]
    return VerificationRecordSerializer(records, many=True,
                                        context=_context(include_timing, include_details)).data


def render_json_lines(reports, include_timing=False, include_details=False):
    rows = serialize_reports(reports, include_timing, include_details)
    return "".join(json.dumps(row, sort_keys=False, default=str) + "\n" for row in rows)


def record_columns(include_timing=False):
    return list(RECORD_FIELDS) + (["timing"] if include_timing else [])


def render_csv(reports, include_timing=False):
    rows = serialize_reports(reports, include_timing)
    df = pd.DataFrame(list(rows), columns=record_columns(include_timing))
    buffer = io.StringIO()
    df.to_csv(buffer, index=False)
    return buffer.getvalue()


def render(reports, output_format="json", include_timing=False, include_details=False):
    if output_format == "csv":
        return render_csv(reports, include_timing)
    return render_json_lines(reports, include_timing, include_details)


def summarize(reports):
    failed = sum(1 for r in reports if not r.passed and not r.skipped)
    skipped = sum(1 for r in reports if r.skipped)
    return {"total": len(reports), "failed": failed, "skipped": skipped}


@transaction.atomic
def save_sweep(command, config, reports):
    counts = summarize(reports)
    run = SweepRun.objects.create(
        command=command,
        check_name=config.get("check", command),
        config=json.loads(json.dumps(config, default=str)),
        seed=config.get("seed", 0),
        output_format=config.get("output_format", "json"),
        jobs=config.get("jobs", 1),
        finished_on=timezone.now(),
        **counts,
    )
    VerificationRecord.objects.bulk_create([record_from_report(report, run) for report in reports])
    return run
