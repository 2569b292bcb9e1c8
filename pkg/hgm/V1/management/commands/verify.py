from ...serializers.sweep_serializers import GRID_CHECKS, RANDOM_CHECKS
from ...utils.sweep_utils import run_sweep
from ._base import HgmCommand

HELP = {
    "bcm": "affine count of V_t against the Gauss-sum expression",
    "lemma": "surface count = 22q - 2 + affine count",
    "trace": "transcendental trace against H3(1/t)",
    "main": "q^2 H2(z)^2 - q = H3(1 - S^2) for both S and both signs",
    "curve-theorem": "#E(F_q) of y^2 = x^3 - ax + b through H2, all nonsingular (a, b)",
    "delta": "smooth fibre counts against |V_t| - Delta",
    "sym2": "T = a(E1)^2 - q for t without CM",
    "conic": "#{X^2 + tY^2 = 1} = q - chi(-t)",
    "maps": "randomized identity tests of the map catalog",
    "si-params": "the Shioda-Inose parameter system",
    "qt": "the section Q_t lies on the surface",
    "x0-2": "forgetful maps from X_0(2) and their j-invariants",
    "j-match": "{j(E1), j(E2)} against the closed j-pair at random (q, t, S)",
}


class Command(HgmCommand):
    help = "Run one verifier over a (q, t) grid or over random trials"

    def add_arguments(self, parser):
        verbs = self.add_verbs(parser)
        for check in GRID_CHECKS:
            if check == "gauss":
                continue
            self.add_grid_arguments(verbs.add_parser(check, help=HELP[check]))
        for check in RANDOM_CHECKS:
            sub = verbs.add_parser(check, help=HELP[check])
            self.add_random_arguments(sub)
            if check == "maps":
                sub.add_argument("--only", help="a single catalog entry")

    def handle(self, *args, **options):
        config = self.sweep_config(options["verb"], options)
        self.emit(run_sweep(config), options, config=config)
