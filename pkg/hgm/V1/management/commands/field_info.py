from ...engine.ffield import dlog, is_square, parse_element, sqrt, trace_to_prime
from ._base import HgmCommand


class Command(HgmCommand):
    help = "Describe F_q: modulus, generator and, optionally, one element"

    def add_arguments(self, parser):
        self.add_field_arguments(parser)
        parser.add_argument("--element", help='"3", "5/2" or "[c0,c1,...]"')

    def handle(self, *args, **options):
        field = self.field_from_options(options)
        payload = {
            "q": field.q,
            "p": field.p,
            "n": field.n,
            "modulus": field.modulus_string(),
            "generator": field.from_index(field.generator).to_json(),
        }
        if options["element"] is not None:
            x = parse_element(field, options["element"])
            root = sqrt(field, x)
            payload["element"] = {
                "value": x.to_json(),
                "dlog": None if x.is_zero() else dlog(field, x),
                "trace": trace_to_prime(field, x),
                "is_square": is_square(field, x),
                "sqrt": None if root is None else root.to_json(),
            }
        self.emit_json(payload)
