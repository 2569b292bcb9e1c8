"""Shared plumbing for the hgm management commands.

Usage errors (argparse, serializer validation, bad parameters) raise
``CommandError`` with returncode 2; failed checks raise it with returncode 1.
"""

import json

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError, CommandParser
from rest_framework.exceptions import ValidationError

from ...engine.ffield import field_for_q, field_new
from ...exceptions import (DomainError, FieldConstructionError, HgmError, ReductionError,
                           UnsupportedConfigurationError)
from ...serializers.sweep_serializers import SweepConfigSerializer
from ...utils.report_utils import render, save_sweep, summarize
from ...utils.sweep_utils import parse_ints, parse_rationals

USAGE = 2
FAILURE = 1
USAGE_ERRORS = (DomainError, FieldConstructionError, ReductionError, UnsupportedConfigurationError)


class HgmCommand(BaseCommand):
    requires_migrations_checks = False
    requires_system_checks = []

    def execute(self, *args, **options):
        try:
            return super().execute(*args, **options)
        except ValidationError as exc:
            raise CommandError(f"invalid arguments: {exc.detail}", returncode=USAGE)
        except USAGE_ERRORS as exc:
            raise CommandError(f"{type(exc).__name__}: {exc}", returncode=USAGE)
        except HgmError as exc:
            raise CommandError(f"{type(exc).__name__}: {exc}", returncode=FAILURE)

    # parsers

    def add_verbs(self, parser):
        return parser.add_subparsers(
            dest="verb", required=True, metavar="VERB", parser_class=CommandParser)

    def add_output_arguments(self, parser):
        parser.add_argument("--format", dest="output_format", choices=("json", "csv"), default="json")
        parser.add_argument("--timing", action="store_true", help="add per-record timing")
        parser.add_argument("--details", action="store_true", help="add the details object to JSON records")
        parser.add_argument("--save", action="store_true", help="persist the records in the sweep store")

    def add_grid_arguments(self, parser):
        parser.add_argument("--q", help="explicit odd prime powers, comma separated")
        parser.add_argument("--pmin", type=int, default=3)
        parser.add_argument("--pmax", type=int)
        parser.add_argument("--prime-powers", action="store_true", help="sweep prime powers, not only primes")
        parser.add_argument("--t", help='rationals as "num/den", comma separated')
        parser.add_argument("--precision", type=int, help=f"Gauss table bits (default {settings.HGMK3_PRECISION})")
        parser.add_argument("--jobs", type=int, help=f"worker processes (default {settings.HGMK3_JOBS})")
        self.add_output_arguments(parser)

    def add_random_arguments(self, parser):
        parser.add_argument("--trials", type=int, default=100)
        parser.add_argument("--bits", type=int, default=62)
        parser.add_argument("--seed", type=int, help=f"default {settings.HGMK3_SEED}")
        self.add_output_arguments(parser)

    def add_field_arguments(self, parser):
        parser.add_argument("--p", type=int, help="characteristic")
        parser.add_argument("--n", type=int, default=1, help="extension degree")
        parser.add_argument("--q", type=int, help="field size; an alternative to --p/--n")

    # configuration

    def field_from_options(self, options):
        """F_q from --q or from --p/--n; exactly one of --q and --p."""
        if (options.get("q") is None) == (options.get("p") is None):
            raise CommandError("give either --q or --p [--n]", returncode=USAGE)
        bound = settings.HGMK3_FIELD_BOUND
        if options.get("q") is not None:
            return field_for_q(options["q"], bound)
        return field_new(options["p"], options.get("n") or 1, bound)

    def sweep_config(self, check, options):
        data = {"check": check, "output_format": options.get("output_format", "json"),
                "include_timing": options.get("timing", False)}
        for key in ("pmin", "pmax", "precision", "jobs", "trials", "bits", "seed", "only"):
            if options.get(key) is not None:
                data[key] = options[key]
        if options.get("prime_powers"):
            data["prime_powers"] = True
        try:
            if options.get("q") is not None:
                data["q"] = parse_ints(options["q"])
            if options.get("t") is not None:
                data["t"] = [str(t) for t in parse_rationals(options["t"])]
        except (ValueError, ZeroDivisionError) as exc:
            raise CommandError(f"cannot parse --q/--t: {exc}", returncode=USAGE)
        serializer = SweepConfigSerializer(data=data)
        serializer.is_valid(raise_exception=True)
        return serializer.validated_data

    # output

    def emit(self, reports, options, command=None, config=None):
        self.stdout.write(render(reports, options.get("output_format", "json"), options.get("timing", False),
                                 options.get("details", False)), ending="")
        if options.get("save"):
            run = save_sweep(command or self.command_name(), dict(config or {}), reports)
            self.stderr.write(f"saved sweep run {run.pk}")
        counts = summarize(reports)
        if counts["failed"]:
            raise CommandError(f"{counts['failed']} of {counts['total']} checks failed", returncode=FAILURE)

    def emit_json(self, payload):
        self.stdout.write(json.dumps(payload, default=str))

    def command_name(self):
        return self.__module__.rsplit(".", 1)[-1]
