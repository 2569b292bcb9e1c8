from ...engine.ecount import count_over_extension, count_points, curve_from_strings, sym2_trace, trace
from ._base import HgmCommand


class Command(HgmCommand):
    help = "Point counts of y^2 = x^3 + a2 x^2 + a4 x + a6 over F_q"

    def add_arguments(self, parser):
        verbs = self.add_verbs(parser)
        count = verbs.add_parser("count", help="count points and report the trace")
        self.add_field_arguments(count)
        count.add_argument("--a2", default="0")
        count.add_argument("--a4", default="0")
        count.add_argument("--a6", default="0")
        count.add_argument("--extension", type=int, default=1, help="also report #E(F_{q^n}) for n up to this")

    def handle(self, *args, **options):
        field = self.field_from_options(options)
        curve = curve_from_strings(field, options["a2"], options["a4"], options["a6"])
        a = trace(curve, field)
        payload = {
            "q": field.q,
            "curve": curve.coefficients(),
            "discriminant": curve.discriminant().to_json(),
            "points": count_points(curve, field),
            "trace": a,
            "sym2_trace": sym2_trace(a, field.q) if not curve.discriminant().is_zero() else None,
            "extension_counts": {n: count_over_extension(a, field.q, n) for n in range(1, options["extension"] + 1)},
        }
        self.emit_json(payload)
