from .cm_serializers import CMRecordSerializer, CMTablesSerializer, ExactRationalField
from .record_serializers import RECORD_FIELDS, SweepRunSerializer, VerificationRecordSerializer
from .sweep_serializers import GRID_CHECKS, RANDOM_CHECKS, SweepConfigSerializer
