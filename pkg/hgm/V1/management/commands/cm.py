from django.conf import settings
from django.core.management.base import CommandError

from ...engine import cmdata
from ...engine.report import exact_str
from ...utils.sweep_utils import parse_rationals
from ._base import USAGE, HgmCommand


class Command(HgmCommand):
    help = "CM parameters of the family: classification, table checks and a trace survey"

    def add_arguments(self, parser):
        verbs = self.add_verbs(parser)
        classify = verbs.add_parser("classify", help="generic, rational-j CM or quadratic-j CM")
        classify.add_argument("--t", required=True, help='comma separated "num/den" values')
        self.add_output_arguments(verbs.add_parser("verify", help="check both CM tables against the j-pair"))
        survey = verbs.add_parser("survey", help="T(p), a(E1)^2 and (D/p) over good primes")
        survey.add_argument("--t", required=True)
        survey.add_argument("--pmin", type=int, default=5)
        survey.add_argument("--pmax", type=int, required=True)

    def handle(self, *args, **options):
        verb = options["verb"]
        try:
            values = parse_rationals(options["t"]) if options.get("t") else []
        except (ValueError, ZeroDivisionError) as exc:
            raise CommandError(f"cannot parse --t: {exc}", returncode=USAGE)
        if verb == "classify":
            for t in values:
                self.emit_json({"schema_version": settings.HGMK3_SCHEMA_VERSION, "t": exact_str(t),
                                "class": cmdata.classify_t(t), "field_m": cmdata.field_of_S(t)})
        elif verb == "verify":
            reports = cmdata.verify_rational_cm() + cmdata.verify_quadratic_cm()
            self.emit(reports, options, config={"verb": verb})
        else:
            if len(values) != 1:
                raise CommandError("survey takes a single --t", returncode=USAGE)
            t = values[0]
            row = cmdata.load_tables().row_for(t)
            for entry in cmdata.cm_trace_survey(t, options["pmax"], options["pmin"]):
                payload = {"schema_version": settings.HGMK3_SCHEMA_VERSION, "t": exact_str(t), "D": row["D"]}
                payload.update(entry.as_json())
                self.emit_json(payload)
