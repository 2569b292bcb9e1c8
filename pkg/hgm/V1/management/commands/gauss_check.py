from ...utils.sweep_utils import run_sweep
from ._base import HgmCommand


class Command(HgmCommand):
    help = "Check |g(m)|^2 = q and g(m)g(-m) = omega(-1)^m q over a list or range of q"

    def add_arguments(self, parser):
        self.add_grid_arguments(parser)

    def handle(self, *args, **options):
        config = self.sweep_config("gauss", options)
        self.emit(run_sweep(config), options, config=config)
