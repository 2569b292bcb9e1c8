from django.core.management.base import CommandError

from ...engine import nslat
from ...engine.report import CheckReport
from ...exceptions import LatticeError
from ...utils.sweep_utils import parse_ints
from ._base import USAGE, HgmCommand


def ns_generic_reports():
    lattice = nslat.ns_gram_generic()
    positive, negative = lattice.signature()
    reports = [
        CheckReport.compare("ns-generic", lattice.det(), 4, variant="det", details=lattice.as_json()),
        CheckReport.compare("ns-generic", [positive, negative], [1, 18], variant="signature"),
        delta_report(),
    ]
    for name, values in nslat.fibre_class_checks().items():
        reports.append(CheckReport.compare("ns-generic", list(values), [0, 1, 1], variant=f"F_{name}"))
    reports.append(CheckReport.compare("ns-generic", nslat.mw_block_t1().entries(),
                                       [[-2, 1, 0], [1, 0, 0], [0, 0, -4]], variant="mw-t1"))
    return reports


def delta_report():
    try:
        admissible = nslat.delta_enumeration()
    except LatticeError as exc:
        return CheckReport(check="ns-generic", passed=False, variant="delta", reason=str(exc))
    return CheckReport.compare("ns-generic", sorted(admissible), sorted(nslat.EXPECTED_ADMISSIBLE), variant="delta")


def cm_reports(p_o_values, bit_choices=None):
    reports = []
    for bits in bit_choices or sorted(nslat.EXPECTED_ADMISSIBLE):
        for p_o in p_o_values:
            profile = nslat.SectionProfile.optimal(*bits, p_O=p_o)
            lattice, name = nslat.ns_cm_gram(profile)
            extended = nslat.ns_gram_with_section(profile)
            block = nslat.cm_block(profile)
            complement = nslat.transcendental_of(block)
            h = nslat.height(profile)
            reports.append(CheckReport(
                check="ns-cm", passed=extended.det() == lattice.det(), variant=f"{name},p_O={p_o}",
                lhs=str(extended.det()), rhs=str(lattice.det()),
                details={"profile": profile.as_json(), "height": str(h), "block": block.entries(),
                         "transcendental": complement.entries()}))
    return reports


class Command(HgmCommand):
    help = "Neron-Severi lattices of the family and its CM members"

    def add_arguments(self, parser):
        verbs = self.add_verbs(parser)
        self.add_output_arguments(verbs.add_parser("ns-generic", help="rank-19 Gram from the curve graph"))
        cm = verbs.add_parser("cm", help="rank-20 lattices for every admissible section profile")
        cm.add_argument("--p-o", "--po", dest="p_o", default="0,1,2", help="values of P.O, comma separated")
        for bit in ("pe7", "pg2", "pg3"):
            cm.add_argument(f"--{bit}", type=int, choices=(0, 1), help="restrict to one section profile")
        self.add_output_arguments(cm)
        self.add_output_arguments(verbs.add_parser("cm-blocks", help="CM blocks against the lattice classes"))

    def handle(self, *args, **options):
        verb = options["verb"]
        if verb == "ns-generic":
            reports = ns_generic_reports()
        elif verb == "cm":
            try:
                p_o_values = parse_ints(options["p_o"])
            except ValueError as exc:
                raise CommandError(f"cannot parse --p-o: {exc}", returncode=USAGE)
            bits = [options[b] for b in ("pe7", "pg2", "pg3")]
            reports = cm_reports(p_o_values, None if bits == [None, None, None] else [tuple(b or 0 for b in bits)])
        else:
            reports = nslat.verify_cm_blocks()
        self.emit(reports, options, config={"verb": verb})
