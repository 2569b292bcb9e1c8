"""Neron-Severi lattices of the rank-19 family and its CM members.

Gram matrices are sympy integer matrices.  The generic lattice is built from
the intersection graph of (-2)-curves and sections: III* fibres f0..f7 and
e0..e7, the I4 fibre g0..g3, the zero section O and the 2-torsion section T.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from sympy import Matrix, Rational, eye, zeros

from ..exceptions import DomainError, LatticeError
from .report import CheckReport, exact_str

logger = logging.getLogger(__name__)


class GramLattice:

    def __init__(self, gram, labels=None):
        gram = Matrix(gram)
        if gram.rows != gram.cols:
            raise LatticeError(f"Gram matrix is {gram.rows}x{gram.cols}")
        if gram != gram.T:
            raise LatticeError("Gram matrix is not symmetric")
        self.gram = gram
        self.labels = tuple(labels) if labels else None

    @property
    def rank(self):
        return self.gram.rows

    def det(self):
        return int(self.gram.det(method="bareiss"))

    def signature(self):
        """(positive, negative) from an exact congruence diagonalisation."""
        diagonal = congruence_diagonal(self.gram)
        return sum(1 for d in diagonal if d > 0), sum(1 for d in diagonal if d < 0)

    def is_even(self):
        return all(self.gram[i, i] % 2 == 0 for i in range(self.rank))

    def block(self, indices):
        return GramLattice(self.gram.extract(list(indices), list(indices)),
                           [self.labels[i] for i in indices] if self.labels else None)

    def entries(self):
        return [[int(v) for v in self.gram.row(i)] for i in range(self.rank)]

    def __eq__(self, other):
        return isinstance(other, GramLattice) and self.gram == other.gram

    def __repr__(self):
        return f"GramLattice({self.entries()})"

    def as_json(self):
        positive, negative = self.signature()
        return {"rank": self.rank, "gram": self.entries(), "det": self.det(),
                "signature": [positive, negative], "labels": list(self.labels) if self.labels else None}


def congruence_diagonal(gram):
    """Diagonal of a rational matrix congruent to ``gram`` (symmetric Gaussian elimination)."""
    a = [[Fraction(int(v.p), int(v.q)) if isinstance(v, Rational) else Fraction(v) for v in gram.row(i)]
         for i in range(gram.rows)]
    diagonal = []
    while a:
        n = len(a)
        pivot = next((i for i in range(n) if a[i][i] != 0), None)
        if pivot is None:
            pair = next(((i, j) for i in range(n) for j in range(n) if a[i][j] != 0), None)
            if pair is None:
                diagonal.extend([Fraction(0)] * n)
                break
            i, j = pair
            # row/col i += row/col j makes the (i, i) entry 2 a[i][j]
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            pivot = i
        d = a[pivot][pivot]
        for k in range(n):
            if k == pivot or a[k][pivot] == 0:
                continue
            factor = a[k][pivot] / d
            for m in range(n):
                a[k][m] -= factor * a[pivot][m]
            for m in range(n):
                a[m][k] -= factor * a[m][pivot]
        diagonal.append(d)
        a = [[a[i][j] for j in range(n) if j != pivot] for i in range(n) if i != pivot]
    return diagonal


# standard lattices

def _e8():
    # chain 0-1-2-3-4-5-6 with node 7 on node 4
    edges = [(i, i + 1) for i in range(6)] + [(4, 7)]
    g = 2 * eye(8)
    for i, j in edges:
        g[i, j] = g[j, i] = -1
    return g


def standard_lattice(name):
    name = name.replace(" ", "")
    if name in ("E8", "E8(-1)"):
        g = _e8()
        return GramLattice(g if name == "E8" else -g)
    if name == "U":
        return GramLattice([[0, 1], [1, 0]])
    if name in ("A1", "A1(-1)"):
        return GramLattice([[2 if name == "A1" else -2]])
    if name.startswith("<") and name.endswith(">"):
        try:
            return GramLattice([[int(name[1:-1])]])
        except ValueError:
            pass
    raise DomainError(f"unknown lattice {name!r}")


def direct_sum(*lattices):
    size = sum(lat.rank for lat in lattices)
    g = zeros(size, size)
    offset = 0
    for lat in lattices:
        g[offset:offset + lat.rank, offset:offset + lat.rank] = lat.gram
        offset += lat.rank
    return GramLattice(g)


def rescale(lattice, k):
    return GramLattice(lattice.gram * k, lattice.labels)


# intersection graph of the rank-19 fibration

NODES = (("O",) + tuple(f"f{i}" for i in range(8)) + ("T",) + tuple(f"e{i}" for i in range(8))
         + tuple(f"g{i}" for i in range(4)))
NODE_INDEX = {name: i for i, name in enumerate(NODES)}
EDGES = (
    ("O", "f7"), ("f7", "f6"), ("f6", "f5"), ("f5", "f3"), ("f3", "f2"), ("f2", "f1"), ("f1", "f0"),
    ("f3", "f4"), ("f0", "T"),
    ("e7", "T"), ("e6", "e7"), ("e6", "e5"), ("e5", "e3"), ("e4", "e3"), ("e3", "e2"), ("e1", "e2"),
    ("e1", "e0"), ("e0", "O"),
    ("O", "g0"), ("g0", "g1"), ("g1", "g3"), ("g3", "T"), ("g3", "g2"), ("g2", "g0"),
)
FIBRE_CLASSES = {
    "f": {"f0": 1, "f1": 2, "f2": 3, "f3": 4, "f4": 2, "f5": 3, "f6": 2, "f7": 1},
    "e": {"e0": 1, "e1": 2, "e2": 3, "e3": 4, "e4": 2, "e5": 3, "e6": 2, "e7": 1},
    "g": {"g0": 1, "g1": 1, "g2": 1, "g3": 1},
}
ALPHA = {"e1": 2, "e2": 4, "e3": 6, "e4": 3, "e5": 5, "e6": 4, "e7": 3, "T": 2}


def graph_gram():
    g = -2 * eye(len(NODES))
    for a, b in EDGES:
        g[NODE_INDEX[a], NODE_INDEX[b]] = g[NODE_INDEX[b], NODE_INDEX[a]] = 1
    return g


def node_vector(coeffs):
    v = zeros(len(NODES), 1)
    for name, c in coeffs.items():
        v[NODE_INDEX[name]] += c
    return v


def _pair(u, v, g):
    return (u.T * g * v)[0, 0]


def generic_basis():
    """Labels and node-space vectors of the rank-19 basis."""
    gamma3_alpha = dict(ALPHA, g3=1)
    last = {"g1": 1, "g2": -1}
    for name, c in gamma3_alpha.items():
        last[name] = last.get(name, 0) - 2 * c
    basis = [(name, {name: 1}) for name in ("f1", "f2", "f3", "f4", "f5", "f6", "f7", "O",
                                            "e1", "e2", "e3", "e4", "e5", "e6", "e7", "T")]
    basis += [("g3+alpha", gamma3_alpha), ("g2", {"g2": 1}), ("g1-2(g3+alpha)-g2", last)]
    return [label for label, _ in basis], [node_vector(c) for _, c in basis]


BLOCKS = {"L1": range(0, 8), "L2": range(8, 16), "U1": range(16, 18), "gamma": range(18, 19)}


def ns_gram_generic():
    g = graph_gram()
    labels, vectors = generic_basis()
    gram = Matrix(len(vectors), len(vectors), lambda i, j: _pair(vectors[i], vectors[j], g))
    lattice = GramLattice(gram, labels)

    owner = {i: name for name, rng in BLOCKS.items() for i in rng}
    cross = [(i, j) for i in range(19) for j in range(19) if owner[i] != owner[j] and gram[i, j] != 0]
    if cross:
        raise LatticeError(f"cross-block intersections at {cross[:4]}")
    if lattice.block(BLOCKS["U1"]).entries() != [[0, 1], [1, -2]]:
        raise LatticeError(f"U1 block is {lattice.block(BLOCKS['U1']).entries()}")
    if gram[18, 18] != -4:
        raise LatticeError(f"gamma^2 = {gram[18, 18]}")
    if lattice.det() != 4:
        raise LatticeError(f"det = {lattice.det()}, expected 4")
    return lattice


def fibre_class_checks():
    """F^2 and F.O, F.T for each of the three fibre classes."""
    g = graph_gram()
    out = {}
    for name, coeffs in FIBRE_CLASSES.items():
        F = node_vector(coeffs)
        out[name] = (int(_pair(F, F, g)), int(_pair(F, node_vector({"O": 1}), g)),
                     int(_pair(F, node_vector({"T": 1}), g)))
    return out


# sections

@dataclass(frozen=True)
class SectionProfile:
    p_O: int = 0
    p_e7: int = 0
    p_f7: int = 1
    p_g0: int = 1
    p_g1: int = 0
    p_g2: int = 0
    p_g3: int = 0

    def __post_init__(self):
        bits = (self.p_e7, self.p_f7, self.p_g0, self.p_g1, self.p_g2, self.p_g3)
        if any(b not in (0, 1) for b in bits):
            raise DomainError(f"intersection bits must be 0 or 1, got {bits}")
        if self.p_O < 0:
            raise DomainError("P.O must be nonnegative")
        if self.p_g0 + self.p_g1 + self.p_g2 + self.p_g3 != 1:
            raise DomainError("a section meets exactly one component of the I4 fibre")

    @classmethod
    def optimal(cls, p_e7=0, p_g2=0, p_g3=0, p_O=0):
        """Normalised so that p_f7 = 1 and p_g1 = 0."""
        return cls(p_O=p_O, p_e7=p_e7, p_f7=1, p_g0=int(not (p_g2 or p_g3)), p_g1=0, p_g2=p_g2, p_g3=p_g3)

    @property
    def bits(self):
        return self.p_e7, self.p_g2, self.p_g3

    def as_json(self):
        return {"p_O": self.p_O, "p_e7": self.p_e7, "p_f7": self.p_f7, "p_g0": self.p_g0,
                "p_g1": self.p_g1, "p_g2": self.p_g2, "p_g3": self.p_g3}


def height(profile):
    return (4 + 2 * profile.p_O - Fraction(3, 2) * profile.p_e7 - Fraction(3, 2) * (1 - profile.p_f7)
            - Fraction(3, 4) * profile.p_g2 - profile.p_g3)


def p_T_relation(profile):
    return 2 + profile.p_O - Fraction(3, 2) * profile.p_e7 - (Fraction(1, 2) * profile.p_g2 + profile.p_g3)


def delta(profile):
    p_e7, p_g2, p_g3 = profile.bits
    return Fraction(8 + 3 * p_g2 - p_e7 * (1 + 6 * p_g2 + 4 * p_g3) + 4 * profile.p_O, 4)


def is_admissible(profile):
    return delta(profile).denominator == 1 and p_T_relation(profile).denominator == 1


EXPECTED_ADMISSIBLE = frozenset({(0, 0, 0), (0, 0, 1), (1, 1, 0)})


def delta_enumeration(p_O_values=(0, 1, 2)):
    admissible = set()
    for p_e7, p_g2, p_g3 in product((0, 1), repeat=3):
        if p_g2 and p_g3:
            continue
        profiles = [SectionProfile.optimal(p_e7, p_g2, p_g3, p_O) for p_O in p_O_values]
        if all(is_admissible(p) for p in profiles):
            admissible.add((p_e7, p_g2, p_g3))
    if admissible != EXPECTED_ADMISSIBLE:
        raise LatticeError(f"admissible profiles {sorted(admissible)} differ from {sorted(EXPECTED_ADMISSIBLE)}")
    logger.debug("admissible profiles %s", sorted(admissible))
    return frozenset(admissible)


def cm_block(profile):
    if not is_admissible(profile):
        raise DomainError(f"profile {profile.bits} with P.O={profile.p_O} is not admissible")
    p_e7, p_g2, p_g3 = profile.bits
    b = -2 * p_e7 + 3 * p_g2 + 2 * p_g3
    return GramLattice([[-4, b], [b, int(-2 * delta(profile))]])


LATTICE_CLASSES = {"L0": 0, "L1": 1, "L2": 2}


def lattice_class_block(name, p_O):
    """NS block of lattice class ``name`` at P.O = p_O."""
    if name == "L0":
        return GramLattice([[-4, 0], [0, -4 - 2 * p_O]])
    if name == "L1":
        return GramLattice([[-4, 1], [1, -2 - 2 * p_O]])
    if name == "L2":
        return GramLattice([[-4, 2], [2, -4 - 2 * p_O]])
    if name == "L4":
        return GramLattice([[-2, 0], [0, -4]])
    raise DomainError(f"unknown lattice class {name!r}")


def classify_block(block):
    """(class name, P.O) of a 2x2 NS block, or (None, None)."""
    (a, b), (_, c) = block.entries()
    if (a, b, c) == (-2, 0, -4):
        return "L4", None
    if a != -4 or b not in LATTICE_CLASSES.values():
        return None, None
    offset = 2 if b == 1 else 4
    p_o = Fraction(-c - offset, 2)
    if p_o.denominator != 1 or p_o < 0:
        return None, None
    name = next(k for k, v in LATTICE_CLASSES.items() if v == b)
    return name, int(p_o)


def ns_cm_gram(profile):
    """E8(-1)^2 + U + block, with det = -4 * height."""
    block = cm_block(profile)
    e8 = standard_lattice("E8(-1)")
    lattice = direct_sum(e8, e8, standard_lattice("U"), block)
    h = height(profile)
    if lattice.det() != -4 * h:
        raise LatticeError(f"det {lattice.det()} != -4 * height {h}")
    name, p_o = classify_block(block)
    if name is None or p_o != profile.p_O:
        raise LatticeError(f"block {block.entries()} does not match a lattice class at P.O={profile.p_O}")
    return lattice, name


def ns_gram_with_section(profile):
    """The rank-19 Gram extended by a section P with the given intersection profile."""
    if not is_admissible(profile):
        raise DomainError(f"profile {profile.bits} is not admissible")
    g = graph_gram()
    labels, vectors = generic_basis()
    p_vector = {
        "O": profile.p_O, "T": int(p_T_relation(profile)),
        "f7": profile.p_f7, "f0": 1 - profile.p_f7,
        "e7": profile.p_e7, "e0": 1 - profile.p_e7,
        "g0": profile.p_g0, "g1": profile.p_g1, "g2": profile.p_g2, "g3": profile.p_g3,
    }
    weights = node_vector(p_vector)
    n = len(vectors)
    gram = zeros(n + 1, n + 1)
    for i in range(n):
        for j in range(n):
            gram[i, j] = _pair(vectors[i], vectors[j], g)
        gram[i, n] = gram[n, i] = (vectors[i].T * weights)[0, 0]
    gram[n, n] = -2
    lattice = GramLattice(gram, labels + ["P"])
    if lattice.det() != -4 * height(profile):
        raise LatticeError(f"rank-20 det {lattice.det()} != -4 * height {height(profile)}")
    return lattice


def mw_block_t1(q_dot_o=0):
    """Gram of {O, F, Q1 - O - 2F} from O^2 = Q1^2 = -2, O.F = Q1.F = 1, F^2 = 0."""
    base = Matrix([[-2, 1, q_dot_o], [1, 0, 1], [q_dot_o, 1, -2]])
    change = Matrix([[1, 0, 0], [0, 1, 0], [-1, -2, 1]])
    return GramLattice(change * base * change.T, ["O", "F", "Q1-O-2F"])


# orthogonal complements in U + U

U2 = Matrix([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])


def integer_kernel(rows):
    """Basis (as columns) of the integer kernel of an integer matrix by unimodular column reduction."""
    a = Matrix(rows)
    m, n = a.shape
    unimodular = eye(n)
    col = 0
    for r in range(m):
        if col >= n:
            break
        while any(a[r, j] != 0 for j in range(col + 1, n)):
            j = min((j for j in range(col, n) if a[r, j] != 0), key=lambda j: abs(a[r, j]))
            a.col_swap(col, j)
            unimodular.col_swap(col, j)
            for k in range(col + 1, n):
                quotient = a[r, k] // a[r, col]
                if quotient:
                    a[:, k] = a[:, k] - quotient * a[:, col]
                    unimodular[:, k] = unimodular[:, k] - quotient * unimodular[:, col]
        if a[r, col] != 0:
            col += 1
    return unimodular[:, col:]


def _same_span(basis_a, basis_b):
    try:
        coeffs = (basis_a.T * basis_a).inv() * basis_a.T * basis_b
    except ValueError:
        return False
    if basis_a * coeffs != basis_b:
        return False
    return all(c.is_integer for c in coeffs) and abs(coeffs.det()) == 1


def u2_complement(a, b, c):
    """Orthogonal complement in U^2 of x, y with x^2 = 2a, x.y = b, y^2 = 2c."""
    a, b, c = int(a), int(b), int(c)
    phi_x = Matrix([[a, 1, b, 0]])
    phi_y = Matrix([[0, 0, c, 1]])
    embedded = Matrix.vstack(phi_x, phi_y) * U2 * Matrix.vstack(phi_x, phi_y).T
    if embedded != Matrix([[2 * a, b], [b, 2 * c]]):
        raise LatticeError(f"embedding gives {embedded.tolist()}")
    explicit = Matrix([[-a, b], [1, 0], [0, c], [0, -1]])
    kernel = integer_kernel(Matrix.vstack(phi_x * U2, phi_y * U2))
    if kernel.cols != 2 or not _same_span(kernel, explicit):
        raise LatticeError(f"integer kernel {kernel.tolist()} differs from the explicit complement")
    complement = GramLattice(explicit.T * U2 * explicit)
    if complement.entries() != [[-2 * a, b], [b, -2 * c]]:
        raise LatticeError(f"complement Gram {complement.entries()}")
    return complement


def transcendental_of(block):
    """Complement in U^2 of an even 2x2 NS block [[2a, b], [b, 2c]]."""
    (aa, b), (_, cc) = block.entries()
    if aa % 2 or cc % 2:
        raise DomainError(f"block {block.entries()} is not even")
    return u2_complement(aa // 2, b, cc // 2)


def verify_cm_blocks(rows=None):
    """Each CM row block against the lattice classes and the height identity."""
    if rows is None:
        from .cmdata import cm_block_rows
        rows = cm_block_rows()
    reports = []
    for t, (a, b, c) in rows:
        block = GramLattice([[a, b], [b, c]])
        name, p_o = classify_block(block)
        label = exact_str(t)
        if name is None:
            reports.append(CheckReport(check="cm-blocks", passed=False, t=label, lhs=str([a, b, c]),
                                       reason=f"block [{a},{b},{c}] matches no lattice class"))
            continue
        details = {"class": name, "p_O": p_o,
                   "transcendental": transcendental_of(block).entries()}
        passed = block == lattice_class_block(name, p_o)
        if name != "L4":
            profile = SectionProfile.optimal(*{"L0": (0, 0, 0), "L1": (1, 1, 0), "L2": (0, 0, 1)}[name], p_O=p_o)
            details["height"] = exact_str(height(profile))
            passed = passed and abs(block.det()) == 4 * height(profile)
        reports.append(CheckReport(check="cm-blocks", passed=passed, t=label, variant=name,
                                   lhs=str([a, b, c]), rhs=str(lattice_class_block(name, p_o).entries()),
                                   details=details))
    return reports
