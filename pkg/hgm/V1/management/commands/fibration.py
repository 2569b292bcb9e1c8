from ...engine.kodaira import MODELS, kodaira_profile
from ._base import HgmCommand


class Command(HgmCommand):
    help = "Kodaira fibre profiles of the elliptic fibrations"

    def add_arguments(self, parser):
        verbs = self.add_verbs(parser)
        profile = verbs.add_parser("profile", help="vanishing orders and fibre types at every singular place")
        profile.add_argument("--model", choices=sorted(MODELS), default="family19")
        profile.add_argument("--t", required=True, help='comma separated "num/den" values')
        self.add_output_arguments(profile)

    def handle(self, *args, **options):
        options["details"] = options["output_format"] == "json"
        reports = [kodaira_profile(options["model"], t.strip()).report()
                   for t in options["t"].split(",") if t.strip()]
        self.emit(reports, options, config={"model": options["model"], "t": options["t"]})
