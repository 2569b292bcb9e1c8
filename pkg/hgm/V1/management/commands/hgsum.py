from django.conf import settings

from ...engine.ffield import parse_element
from ...engine.hyperg import datum_from_parameters, escalated, hg_sum
from ...utils.sweep_utils import character_system_for
from ._base import HgmCommand


class Command(HgmCommand):
    help = "Evaluate H_q(alpha; beta | t)"

    def add_arguments(self, parser):
        parser.add_argument("--alpha", required=True, help='comma separated, e.g. "1/4,1/2,3/4"')
        parser.add_argument("--beta", required=True, help='comma separated, e.g. "0,0,0"')
        self.add_field_arguments(parser)
        parser.add_argument("--t", required=True, help='"num/den" or "[c0,c1,...]"')
        parser.add_argument("--precision", type=int, default=settings.HGMK3_PRECISION)

    def handle(self, *args, **options):
        datum = datum_from_parameters(options["alpha"].split(","), options["beta"].split(","))
        cs = character_system_for(self.field_from_options(options).q, options["precision"])
        t = parse_element(cs.field, options["t"])
        result = _evaluate(datum, cs, t)
        payload = {"datum": datum.label(), "p_list": list(datum.p_list), "q_list": list(datum.q_list),
                   "M": str(datum.M), "epsilon": datum.epsilon, "q": cs.field.q, "t": t.to_json()}
        payload.update(result.as_json())
        self.emit_json(payload)


def _evaluate(datum, cs, t):
    return escalated(lambda system, value: hg_sum(datum, system, value), cs, t)
