from ...engine.ffield import parse_element
from ...engine.k3count import AFFINE_MODES, count_report
from ._base import HgmCommand


class Command(HgmCommand):
    help = "Point counts of V_t and of its elliptic surface"

    def add_arguments(self, parser):
        verbs = self.add_verbs(parser)
        surface = verbs.add_parser("surface", help="count V_t(F_q) and the fibred surface")
        self.add_field_arguments(surface)
        surface.add_argument("--t", required=True, help='"num/den" or "[c0,c1,...]"')
        surface.add_argument("--method", choices=AFFINE_MODES + ("fibered",), default="fibered")

    def handle(self, *args, **options):
        field = self.field_from_options(options)
        t = options["t"]
        if t.strip().startswith("["):
            t = parse_element(field, t)
        self.emit_json(count_report(field, t, options["method"]).as_json())
