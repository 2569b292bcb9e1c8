from django.db import models

from .managers import VerificationRecordManager


class SweepRun(models.Model):

    FORMAT_CHOICES = (
        ("json", "json"),
        ("csv", "csv"),
    )

    command = models.CharField(max_length=50)
    check_name = models.CharField(max_length=50)
    config = models.JSONField(default=dict)
    seed = models.BigIntegerField()
    output_format = models.CharField(max_length=10, choices=FORMAT_CHOICES, default="json")
    jobs = models.PositiveIntegerField(default=1)
    total = models.PositiveIntegerField(default=0)
    failed = models.PositiveIntegerField(default=0)
    skipped = models.PositiveIntegerField(default=0)
    started_on = models.DateTimeField(auto_now_add=True)
    finished_on = models.DateTimeField(blank=True, null=True)

    class Meta:
        ordering = ("-started_on",)

    @property
    def passed(self):
        return self.failed == 0

    def __str__(self):
        return f"{self.command} {self.check_name} ({self.total} records, {self.failed} failed)"


class VerificationRecord(models.Model):

    run = models.ForeignKey(
        SweepRun,
        on_delete=models.CASCADE,
        related_name='records'
    )
    check_name = models.CharField(max_length=50)
    q = models.BigIntegerField(blank=True, null=True)
    t = models.CharField(max_length=255, blank=True, null=True)
    map_name = models.CharField(max_length=100, blank=True, null=True)
    variant = models.CharField(max_length=255, blank=True, default='')
    passed = models.BooleanField()
    skipped = models.BooleanField(default=False)
    reason = models.CharField(max_length=255, blank=True, default='')
    lhs = models.TextField(blank=True, null=True)
    rhs = models.TextField(blank=True, null=True)
    residual = models.FloatField(blank=True, null=True)
    timing = models.FloatField(blank=True, null=True)
    details = models.JSONField(default=dict, blank=True)
    created_on = models.DateTimeField(auto_now_add=True)

    objects = VerificationRecordManager()

    class Meta:
        ordering = ("check_name", "q", "t", "map_name", "variant")
        indexes = [models.Index(fields=["check_name", "passed"], name="hgm_v1_record_check_idx")]

    def __str__(self):
        status = "skip" if self.skipped else ("pass" if self.passed else "FAIL")
        return f"{self.check_name} q={self.q} t={self.t} {status}"


def record_from_report(report, run=None):
    """An unsaved record carrying a CheckReport's fields."""
    return VerificationRecord(
        run=run,
        check_name=report.check,
        q=report.q,
        t=report.t,
        map_name=report.map_name,
        variant=report.variant or '',
        passed=report.passed,
        skipped=report.skipped,
        reason=report.reason or '',
        lhs=report.lhs,
        rhs=report.rhs,
        residual=report.residual,
        timing=report.timing,
        details=report.details or {},
    )
