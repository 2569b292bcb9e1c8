"""Randomized verification of the explicit maps and identities.

A catalog entry is compiled once into term lists with exact rational
coefficients.  Each trial draws a random prime p, samples the free variables
in F_p, solves the source equation for the designated variable (degree at
most 2, square roots via ``prime_sqrt``), pushes the point through the map and
checks every target equation.  A wrong map survives one trial with
probability at most D/p, D being the degree estimate reported with the result.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import Poly, Rational, cancel, fraction, sympify, together
from sympy.polys.polyerrors import PolynomialError

from ..exceptions import ConfigurationError, DomainError, SamplingError, SingularCurveError
from . import catalog
from .ecount import e1_e2, twist_relation_holds
from .ffield import field_new, make_rng, parse_element, prime_sqrt, random_prime
from .report import CheckReport, exact_str

logger = logging.getLogger(__name__)

DEFAULT_TRIALS = 100
DEFAULT_PRIME_BITS = 62
MIN_PRIME_BITS = 40
MAX_RESAMPLE_RATE = 0.9
ATTEMPTS_PER_TRIAL = 64


class CompiledRational:
    """num/den of a rational expression as ((exponents, num, den), ...) term lists."""

    def __init__(self, expr, gens):
        self.gens = tuple(gens)
        num, den = fraction(together(sympify(expr)))
        self.num, self.num_degree = self._terms(num)
        self.den, self.den_degree = self._terms(den)
        if not self.den:
            raise ConfigurationError(f"denominator of {expr} is identically zero")

    def _terms(self, expr):
        try:
            poly = Poly(expr, *self.gens, domain="QQ")
        except PolynomialError as exc:
            raise ConfigurationError(f"{expr} is not a rational function of {self.gens}: {exc}")
        terms = []
        for monom, coeff in poly.as_dict(native=False).items():
            coeff = Rational(coeff)
            terms.append((monom, int(coeff.p), int(coeff.q)))
        return tuple(terms), (poly.total_degree() if terms else 0)

    @property
    def degree(self):
        return self.num_degree + self.den_degree

    @staticmethod
    def _poly_mod(terms, values, p):
        total = 0
        for exps, num, den in terms:
            term = num * pow(den, -1, p) % p
            for value, e in zip(values, exps):
                if e:
                    term = term * pow(value, e, p) % p
            total = (total + term) % p
        return total

    @staticmethod
    def _poly_exact(terms, values):
        total = Fraction(0)
        for exps, num, den in terms:
            term = Fraction(num, den)
            for value, e in zip(values, exps):
                if e:
                    term *= value ** e
            total += term
        return total

    def mod_p(self, values, p):
        """Value mod p, or None when the denominator vanishes there."""
        den = self._poly_mod(self.den, values, p)
        if den == 0:
            return None
        return self._poly_mod(self.num, values, p) * pow(den, -1, p) % p

    def exact(self, values):
        den = self._poly_exact(self.den, values)
        if den == 0:
            return None
        return self._poly_exact(self.num, values) / den


@dataclass(frozen=True)
class CompiledMap:
    entry: catalog.RationalMap
    free: tuple
    solver: tuple
    source_guard: object
    components: tuple
    targets: tuple
    degree_bound: int

    @property
    def name(self):
        return self.entry.name


@lru_cache(maxsize=None)
def compiled_map(name):
    try:
        entry = catalog.CATALOG[name]
    except KeyError:
        raise DomainError(f"no map named {name!r}; known maps: {', '.join(sorted(catalog.CATALOG))}")
    entry = entry.prepared()
    if len(entry.source) > 1:
        raise ConfigurationError(f"{name}: only hypersurface sources are supported")
    if entry.source and entry.solve_for is None:
        raise ConfigurationError(f"{name}: source equation given without a solvable variable")

    free = tuple(v for v in entry.variables if v != entry.solve_for)
    solver, guard, source_degree = (), None, 0
    if entry.source:
        if entry.solve_for not in entry.variables:
            raise ConfigurationError(f"{name}: {entry.solve_for} is not a map variable")
        num, den = fraction(together(entry.source[0]))
        poly = Poly(num, entry.solve_for)
        if not 1 <= poly.degree() <= 2:
            raise ConfigurationError(
                f"{name}: source has degree {poly.degree()} in {entry.solve_for}, need 1 or 2")
        solver = tuple(CompiledRational(c, free) for c in poly.all_coeffs())
        guard = CompiledRational(den, entry.variables)
        source_degree = Poly(num, *entry.variables).total_degree()

    components = tuple((sym, CompiledRational(expr, entry.variables)) for sym, expr in entry.components)
    targets = tuple(CompiledRational(expr, entry.target_symbols) for expr in entry.targets)
    component_degree = max((c.degree for _, c in components), default=1)
    target_degree = max((tgt.num_degree for tgt in targets), default=1)
    bound = max(target_degree * component_degree + source_degree, 1)
    return CompiledMap(entry, free, solver, guard, components, targets, bound)


def _solve(cmap, env, p, rng):
    """Solve the source equation for the designated variable; False when degenerate."""
    values = [env[v] for v in cmap.free]
    coeffs = [c.mod_p(values, p) for c in cmap.solver]
    if any(c is None for c in coeffs):
        return False
    if len(coeffs) == 3 and coeffs[0] != 0:
        a2, a1, a0 = coeffs
        root = prime_sqrt(a1 * a1 - 4 * a2 * a0, p)
        if root is None:
            return False
        if rng.random() < 0.5:
            root = -root
        value = (-a1 + root) * pow(2 * a2, -1, p) % p
    else:
        a1, a0 = coeffs[-2], coeffs[-1]
        if a1 == 0:
            return False
        value = -a0 * pow(a1, -1, p) % p
    env[cmap.entry.solve_for] = value
    guard = cmap.source_guard.mod_p([env[v] for v in cmap.entry.variables], p)
    return guard not in (None, 0)


def _push(cmap, env, p):
    values = [env[v] for v in cmap.entry.variables]
    image = {}
    for sym, comp in cmap.components:
        value = comp.mod_p(values, p)
        if value is None:
            return None
        image[sym] = value
    return image


def _residuals(cmap, image, p):
    values = [image[s] for s in cmap.entry.target_symbols]
    return [tgt.mod_p(values, p) for tgt in cmap.targets]


def _run_trials(links, trials, prime_bits, rng):
    """Sample on the first link, push through every link, test the last targets."""
    head, last = links[0], links[-1]
    attempts = resamples = 0
    for trial in range(trials):
        p = random_prime(prime_bits, rng)
        for _ in range(ATTEMPTS_PER_TRIAL):
            attempts += 1
            env = {v: rng.randrange(1, p) for v in head.free}
            image = env
            if head.solver and not _solve(head, env, p, rng):
                resamples += 1
                continue
            for link in links:
                image = _push(link, image, p)
                if image is None:
                    break
            residuals = None if image is None else _residuals(last, image, p)
            if residuals is None or any(r is None for r in residuals):
                resamples += 1
                continue
            if any(residuals):
                witness = {str(k): v for k, v in env.items()}
                return trial, attempts, resamples, {"p": p, "point": witness, "residuals": residuals}
            break
        else:
            raise SamplingError(f"{head.name}: no usable sample in {ATTEMPTS_PER_TRIAL} attempts mod {p}")
    if attempts and resamples / attempts > MAX_RESAMPLE_RATE:
        raise SamplingError(f"{head.name}: resample rate {resamples}/{attempts} above {MAX_RESAMPLE_RATE:.0%}")
    return trials, attempts, resamples, None


def _map_report(label, links, trials, prime_bits, seed):
    if trials < 1:
        raise DomainError("trials must be at least 1")
    if prime_bits < MIN_PRIME_BITS:
        raise DomainError(f"prime_bits must be at least {MIN_PRIME_BITS}")
    rng = make_rng(f"{seed}:{label}")
    passed_trials, attempts, resamples, witness = _run_trials(links, trials, prime_bits, rng)
    degree = max(link.degree_bound for link in links) * len(links)
    per_trial = Fraction(degree, 2 ** (prime_bits - 1))
    details = {
        "trials": trials,
        "prime_bits": prime_bits,
        "attempts": attempts,
        "resamples": resamples,
        "degree_bound": degree,
        "per_trial_bound": float(per_trial),
        "union_bound": float(min(per_trial * trials, 1)),
        "note": links[0].entry.note,
    }
    if resamples:
        logger.debug("%s: %d resamples over %d attempts", label, resamples, attempts)
    if witness:
        details["witness"] = witness
        logger.warning("map %s fails at trial %d mod %d", label, passed_trials, witness["p"])
    return CheckReport(check="maps", passed=witness is None, map_name=label,
                       lhs=str(passed_trials), rhs=str(trials), details=details)


def verify_map(name, trials=DEFAULT_TRIALS, prime_bits=DEFAULT_PRIME_BITS, seed=0):
    return _map_report(name, [compiled_map(name)], trials, prime_bits, seed)


def verify_maps(only=None, trials=DEFAULT_TRIALS, prime_bits=DEFAULT_PRIME_BITS, seed=0):
    names = [only] if only else sorted(catalog.CATALOG)
    return [verify_map(name, trials, prime_bits, seed) for name in names]


def verify_chain_psi(trials=DEFAULT_TRIALS, prime_bits=DEFAULT_PRIME_BITS, seed=0):
    """One report per link plus the composite X8 -> Inose model."""
    reports = [verify_map(name, trials, prime_bits, seed) for name in catalog.PSI_CHAIN]
    links = [compiled_map(name) for name in catalog.PSI_CHAIN]
    composite = _map_report("psi8..psi2", links, trials, prime_bits, seed)
    composite.variant = "composite"
    reports.append(composite)
    return reports


# Shioda-Inose parameters

SI_AT_ONE = (Fraction(-40, 3), Fraction(448, 27), Fraction(-10, 3), Fraction(-56, 27), Fraction(1))


def si_values(h_value):
    """(a, b, c, d, t) at a nonzero rational h."""
    h_value = Fraction(h_value)
    if h_value == 0:
        raise DomainError("h must be nonzero")
    values = catalog.si_h_form(h_value)
    return tuple(values[k] for k in "abcdt")


def si_residuals(h_value):
    return catalog.si_system(*si_values(h_value))


def _ab_identities():
    """A^3 = j1 j2 / 12^6 and B^2 = (1 - j1/12^3)(1 - j2/12^3) as identities in t."""
    t = catalog.t
    pair = _pair(t)
    A = (16 * t + 9) / 9
    B_squared = Rational(4, 729) * t * (81 - 32 * t) ** 2
    norm = pair.a ** 2 - pair.b ** 2 * pair.radicand
    one_minus = (1 - pair.a / 1728) ** 2 - (pair.b / 1728) ** 2 * pair.radicand
    return cancel(A ** 3 - norm / 12 ** 6), cancel(B_squared - one_minus)


def verify_si_parameters(trials=DEFAULT_TRIALS, prime_bits=DEFAULT_PRIME_BITS, seed=0):
    reports = []
    got = si_values(1)
    residuals = si_residuals(1)
    reports.append(CheckReport(check="si-params", passed=got == SI_AT_ONE and not any(residuals),
                               variant="h=1", lhs=exact_str(list(got)), rhs=exact_str(list(SI_AT_ONE)),
                               details={"residuals": [exact_str(r) for r in residuals]}))

    rng = make_rng(f"{seed}:si-rationals")
    witness = None
    checked = 0
    for checked in range(1, trials + 1):
        h_value = Fraction(rng.choice([-1, 1]) * rng.randint(1, 60), rng.randint(1, 60))
        residuals = si_residuals(h_value)
        if any(residuals):
            witness = {"h": exact_str(h_value), "residuals": [exact_str(r) for r in residuals]}
            break
    reports.append(CheckReport(check="si-params", passed=witness is None, variant="random-rationals",
                               lhs=str(checked - (witness is not None)), rhs=str(checked),
                               details={"witness": witness} if witness else {}))

    for name in catalog.SI_MAPS:
        report = verify_map(name, trials, prime_bits, seed)
        report.check = "si-params"
        reports.append(report)

    a_res, b_res = _ab_identities()
    reports.append(CheckReport(check="si-params", passed=a_res == 0 and b_res == 0, variant="A,B",
                               lhs=str(a_res), rhs="0", details={"B_residual": str(b_res)}))
    return reports


# j-invariants of the pair E1, E2

@dataclass(frozen=True)
class JPair:
    """The two values a +- b sqrt(radicand)."""

    a: object
    b: object
    radicand: object

    def conjugates(self, root):
        return self.a + self.b * root, self.a - self.b * root

    def rational_values(self):
        """Both values as Fractions when the radical is rational, else None."""
        if self.b == 0:
            return self.a, self.a
        root = _rational_sqrt(self.radicand)
        if root is None:
            return None
        return tuple(sorted(self.conjugates(root)))

    def as_json(self):
        values = self.rational_values()
        return {"a": exact_str(self.a), "b": exact_str(self.b), "radicand": exact_str(self.radicand),
                "values": exact_str(list(values)) if values else None}


def _pair(t):
    """Works for Fractions, field elements and sympy symbols alike."""
    return JPair(64 * (512 * t * t - 414 * t + 27), 128 * (256 * t - 81), t * (t - 1))


def _rational_sqrt(value):
    value = Fraction(value)
    if value < 0:
        return None
    num, den = math.isqrt(value.numerator), math.isqrt(value.denominator)
    if num * num != value.numerator or den * den != value.denominator:
        return None
    return Fraction(num, den)


def j_invariants_pair(t):
    t = Fraction(t)
    if t == 0:
        raise DomainError("t must be nonzero")
    return _pair(t)


def _coerce(field, value):
    if field is None:
        return Fraction(value)
    if isinstance(value, str):
        return parse_element(field, value)
    return field.element(value)


def j_match_check(field, t, S):
    """{j(E1), j(E2)} against the pair with sqrt(t(t-1)) realised as t*S.

    ``field`` may be None for rational t and S.
    """
    t_val, S_val = _coerce(field, t), _coerce(field, S)
    if t_val == 0:
        raise DomainError("t must be nonzero")
    q = field.q if field is not None else None
    variant = f"S={exact_str(S_val)}"
    e1, e2 = e1_e2(t_val, S_val)
    try:
        j1, j2 = e1.j_invariant(), e2.j_invariant()
    except SingularCurveError:
        return CheckReport.skip("j-match", "singular", q=q, t=exact_str(t_val), variant=variant)
    plus, minus = _pair(t_val).conjugates(t_val * S_val)
    key = (lambda e: e.index) if field is not None else None
    lhs = sorted([j1, j2], key=key)
    rhs = sorted([plus, minus], key=key)
    report = CheckReport.compare("j-match", lhs, rhs, q=q, t=exact_str(t_val), variant=variant)
    report.details["e1_is_plus"] = j1 == plus
    return report


def j_pair_symmetric(field, t, S):
    """The pair read through S and through -S is the same set."""
    S_val = _coerce(field, S)
    return j_match_check(field, t, S_val).rhs == j_match_check(field, t, -S_val).rhs


def j_match_sample(trials=200, seed=0, primes=(5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)):
    """j_match_check at random (q, t, S): q from ``primes``, S drawn first and t = 1/(1 - S^2)."""
    rng = make_rng(f"{seed}:j-match")
    checked, skipped = 0, 0
    for _ in range(trials):
        field = field_new(rng.choice(primes))
        S = field.from_index(rng.randrange(field.q))
        if S * S == 1:
            skipped += 1
            continue
        t = (1 - S * S).inverse()
        report = j_match_check(field, t, S)
        if report.skipped:
            skipped += 1
            continue
        checked += 1
        if not report.passed:
            report.details["checked"] = checked
            return report
    return CheckReport(check="j-match", passed=True, lhs=str(checked), rhs=str(checked),
                       variant="random", details={"trials": trials, "skipped": skipped})


def verify_twist_relation(t, S, field=None):
    t_val, S_val = _coerce(field, t), _coerce(field, S)
    holds = twist_relation_holds(t_val, S_val)
    return CheckReport(check="twist", passed=holds, q=field.q if field is not None else None,
                       t=exact_str(t_val), variant=f"S={exact_str(S_val)}",
                       lhs="E1(-S)^(-2)", rhs="E2(S)")


# X_0(2)

def j_of_u(u):
    u = Fraction(u)
    if u == 0:
        raise DomainError("j(u) has a pole at u = 0")
    return (u + 256) ** 3 / (u * u)


def j_of_ab(a, b):
    """j of y^2 = x^3 + a x^2 + b x."""
    a, b = Fraction(a), Fraction(b)
    disc = b * b * (a * a - 4 * b)
    if disc == 0:
        raise SingularCurveError(f"y^2 = x^3 + {a}x^2 + {b}x is singular", disc)
    return 256 * (a * a - 3 * b) ** 3 / disc


def s_t_from_ab(a, b):
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0 or a * a == 4 * b:
        raise DomainError(f"(a, b) = ({a}, {b}) is degenerate")
    return (8 * b - a * a) / (a * a), a ** 4 / (16 * (a * a - 4 * b) * b)


def x0_2_checks(trials=DEFAULT_TRIALS, prime_bits=DEFAULT_PRIME_BITS, seed=0):
    reports = []
    for name in catalog.X0_2_MAPS:
        report = verify_map(name, trials, prime_bits, seed)
        report.check = "x0-2"
        reports.append(report)

    reports.append(CheckReport.compare("x0-2", j_of_u(-256), Fraction(0), variant="u=-256"))
    j_e1 = j_of_ab(-2, Fraction(1, 2))
    j_e2 = j_of_ab(4, 2)
    reports.append(CheckReport.compare("x0-2", [j_of_u(64), j_e1, j_e2], [Fraction(8000)] * 3, variant="s=0"))
    reports.append(ab_point_check(1, 1))
    reports.append(ab_point_check(2, 1))
    return reports


def ab_point_check(a, b):
    """s^2 = (t-1)/t at the (s, t) of y^2 = x^3 + a x^2 + b x; degenerate (a, b) skip."""
    variant = f"a={a},b={b}"
    try:
        s, t = s_t_from_ab(a, b)
    except DomainError as exc:
        return CheckReport.skip("x0-2", str(exc), variant=variant)
    return CheckReport.compare("x0-2", s * s, (t - 1) / t, variant=variant,
                               details={"s": exact_str(s), "t": exact_str(t)})


def verify_qt_on_curve(trials=DEFAULT_TRIALS, prime_bits=DEFAULT_PRIME_BITS, seed=0):
    reports = []
    for name in catalog.QT_MAPS:
        report = verify_map(name, trials, prime_bits, seed)
        report.check = "qt"
        reports.append(report)
    return reports


def symbolic_residual(name):
    """The first target of a catalog entry after substituting the components; 0 for maps without a source."""
    entry = catalog.CATALOG[name].prepared()
    if entry.source:
        raise DomainError(f"{name} has a source equation; use verify_map")
    image = dict(entry.components)
    return [cancel(tgt.subs(image, simultaneous=True)) for tgt in entry.targets]


__all__ = [
    "CompiledRational", "JPair", "ab_point_check", "compiled_map", "j_invariants_pair", "j_match_check",
    "j_match_sample", "j_of_ab", "j_of_u", "j_pair_symmetric", "s_t_from_ab", "si_residuals", "si_values",
    "symbolic_residual", "verify_chain_psi", "verify_map", "verify_maps", "verify_qt_on_curve", "verify_si_parameters",
    "verify_twist_relation", "x0_2_checks",
]
