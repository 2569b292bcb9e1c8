"""Grid and randomized sweeps over the verifiers.

A sweep is a list of independent cells.  Cells run in-process or on a
``ProcessPoolExecutor`` whose workers call ``django.setup()``; results are
merged and sorted, so serial and parallel runs print the same report.
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import lru_cache

import django
from django.conf import settings
from sympy import factorint, primerange

from ..engine import geomver
from ..engine.charsum import CharacterSystem
from ..engine.cmdata import GENERIC, classify_t
from ..engine.ecount import verify_curve_trace_exhaustive
from ..engine.ffield import field_new
from ..engine.k3count import (surface_bookkeeping, verify_bcm_identity, verify_conic_count,
                              verify_main_identity, verify_point_count_lemma, verify_sym2_relation,
                              verify_trace_corollary)
from ..engine.report import CheckReport, exact_str
from ..exceptions import HgmError

logger = logging.getLogger(__name__)


def parse_rationals(text):
    """"2,3,5/2" -> [Fraction(2), Fraction(3), Fraction(5, 2)]."""
    return [Fraction(part.strip()) for part in str(text).split(",") if part.strip()]


def parse_ints(text):
    return [int(part) for part in str(text).split(",") if part.strip()]


def q_grid(pmin, pmax, prime_powers=False):
    """Odd primes (or odd prime powers) in [pmin, pmax]."""
    if not prime_powers:
        return [int(p) for p in primerange(max(pmin, 3), pmax + 1)]
    grid = []
    for q in range(max(pmin, 3), pmax + 1):
        factors = factorint(q)
        if len(factors) == 1 and 2 not in factors:
            grid.append(q)
    return grid


@lru_cache(maxsize=32)
def character_system_for(q, precision):
    (p, n), = factorint(q).items()
    field = field_new(int(p), int(n), bound=settings.HGMK3_FIELD_BOUND)
    return CharacterSystem(field, precision)


def gauss_report(cs):
    reflection = cs.reflection_residual()
    residual = max(cs.residual, reflection)
    return CheckReport(check="gauss", passed=residual <= cs.tolerance, q=cs.field.q,
                       lhs=f"{residual:.3g}", rhs=f"{cs.tolerance:.3g}", residual=residual,
                       details={"norm_residual": cs.residual, "reflection_residual": reflection,
                                "precision": cs.precision, "high_precision": cs.high_precision})


def _sym2(cs, t):
    if classify_t(t) != GENERIC:
        return CheckReport.skip("trace", "cm", q=cs.field.q, t=exact_str(t), variant="sym2")
    return verify_sym2_relation(cs.field, t)


def _as_list(result):
    return result if isinstance(result, list) else [result]


GRID_RUNNERS = {
    "bcm": lambda cs, t: verify_bcm_identity(cs, t),
    "lemma": lambda cs, t: verify_point_count_lemma(cs.field, t),
    "trace": lambda cs, t: verify_trace_corollary(cs, t),
    "main": lambda cs, t: verify_main_identity(cs, t),
    "delta": lambda cs, t: surface_bookkeeping(cs.field, t),
    "sym2": _sym2,
    "conic": lambda cs, t: verify_conic_count(cs.field, t),
}
PER_Q_RUNNERS = {
    "gauss": gauss_report,
    "curve-theorem": verify_curve_trace_exhaustive,
}


def run_cell(check, q, t, precision):
    """All reports of one (check, q, t) cell; engine errors become failed records."""
    started = time.perf_counter()
    try:
        cs = character_system_for(q, precision)
        if check in PER_Q_RUNNERS:
            reports = _as_list(PER_Q_RUNNERS[check](cs))
        else:
            reports = _as_list(GRID_RUNNERS[check](cs, t))
    except HgmError as exc:
        logger.warning("%s at q=%s t=%s raised %s: %s", check, q, exact_str(t), type(exc).__name__, exc)
        reports = [CheckReport(check=check, passed=False, q=q, t=exact_str(t),
                               reason=f"{type(exc).__name__}: {exc}")]
    elapsed = time.perf_counter() - started
    for report in reports:
        report.timing = elapsed / len(reports)
        if report.skipped:
            logger.info("skipped %s at q=%s t=%s: %s", check, report.q, report.t, report.reason)
    return reports


def grid_cells(config):
    qs = config.get("q") or q_grid(config["pmin"], config["pmax"], config.get("prime_powers", False))
    if config["check"] in PER_Q_RUNNERS:
        return [(config["check"], q, None, config["precision"]) for q in qs]
    return [(config["check"], q, t, config["precision"]) for q in qs for t in config["t"]]


def run_random(config):
    check, trials, bits, seed = config["check"], config["trials"], config["bits"], config["seed"]
    started = time.perf_counter()
    if check == "maps":
        only = config.get("only")
        reports = geomver.verify_maps(only, trials, bits, seed)
        if not only:
            reports += geomver.verify_chain_psi(trials, bits, seed)[-1:]
    elif check == "si-params":
        reports = geomver.verify_si_parameters(trials, bits, seed)
    elif check == "qt":
        reports = geomver.verify_qt_on_curve(trials, bits, seed)
    elif check == "x0-2":
        reports = geomver.x0_2_checks(trials, bits, seed)
    elif check == "j-match":
        reports = [geomver.j_match_sample(max(trials, 200), seed)]
    else:
        raise KeyError(check)
    elapsed = time.perf_counter() - started
    for report in reports:
        report.timing = elapsed / len(reports)
    return reports


def _star_cell(args):
    return run_cell(*args)


def run_sweep(config):
    """Sorted reports for a validated SweepConfigSerializer payload."""
    if config["check"] not in GRID_RUNNERS and config["check"] not in PER_Q_RUNNERS:
        return sorted(run_random(config), key=CheckReport.sort_key)
    cells = grid_cells(config)
    jobs = min(config.get("jobs", 1), len(cells)) or 1
    logger.info("sweep %s: %d cells on %d worker(s)", config["check"], len(cells), jobs)
    reports = []
    if jobs == 1:
        for cell in cells:
            reports.extend(run_cell(*cell))
    else:
        with ProcessPoolExecutor(max_workers=jobs, initializer=django.setup) as pool:
            for cell_reports in pool.map(_star_cell, cells, chunksize=max(1, len(cells) // (4 * jobs))):
                reports.extend(cell_reports)
    return sorted(reports, key=CheckReport.sort_key)
