from django.db import models


class VerificationRecordQuerySet(models.QuerySet):

    def failures(self):
        return self.filter(passed=False, skipped=False)

    def for_check(self, check):
        return self.filter(check_name=check)


class VerificationRecordManager(models.Manager.from_queryset(VerificationRecordQuerySet)):
    """Records of saved sweeps; ``failures()`` and ``for_check()`` chain."""
    use_in_migrations = True

    def create_from_report(self, run, report):
        from .models import record_from_report

        record = record_from_report(report, run)
        record.save(using=self._db)
        return record
