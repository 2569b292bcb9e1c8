"""Catalog of explicit maps between the models of the family.

Each entry sends points of a source hypersurface (or a free parameter space)
to a target model; ``geomver.verify_map`` checks that images satisfy the
target equations.  Symbols shared by several models are module-level so chains
can hand values from one link to the next by name.
"""

from dataclasses import dataclass

from sympy import Rational, symbols

s, sp, x, y, z, t, u, v, r, w, h = symbols("s sp x y z t u v r w h")
S = symbols("S")
X, Y, Xa, Ya, Yp, Yq, x1, x2, un = symbols("X Y Xa Ya Yp Yq x1 x2 un")
a, b, U, A_, B_ = symbols("a b U A_ B_")
Da, Db, Dc, Dt, Dsq = symbols("Da Db Dc Dt Dsq")
E1, E2 = symbols("E1 E2")

half = Rational(1, 2)


@dataclass(frozen=True)
class RationalMap:
    name: str
    note: str
    variables: tuple
    source: tuple
    solve_for: object
    components: tuple
    targets: tuple
    substitutions: tuple = ()

    @property
    def target_symbols(self):
        return tuple(sym for sym, _ in self.components)

    def prepared(self):
        """Entry with ``substitutions`` applied to every expression."""
        if not self.substitutions:
            return self
        subs = dict(self.substitutions)
        return RationalMap(
            self.name, self.note, self.variables,
            tuple(e.subs(subs) for e in self.source), self.solve_for,
            tuple((sym, e.subs(subs)) for sym, e in self.components),
            tuple(e.subs(subs) for e in self.targets))


# models

def canonical(x_, y_, z_, t_):
    return x_ * y_ * z_ * (1 - x_ - y_ - z_) - 1 / (256 * t_)


def can1(x_, s_, z_, t_):
    return x_ * (s_ - x_) * z_ * (1 - (s_ + z_)) - t_ / 256


def weier1(X_, Y_, s_, t_):
    return Y_ ** 2 - X_ * (X_ ** 2 + 2 * (32 * s_ ** 4 - 64 * s_ ** 3 + 32 * s_ ** 2 - t_) * X_ + t_ ** 2)


def three_star(s_, x_, z_, t_):
    return (s_ + 1) ** 2 / (256 * t_) + (s_ - 1) * x_ ** 2 * z_ * (s_ * (2 * x_ + z_ - 1) + z_ - 1)


def family19(X_, Y_, s_, t_):
    return (Y_ ** 2 - X_ ** 3 - Rational(1, 4) * (s_ ** 2 - 1) ** 2 * X_ ** 2
            - s_ ** 2 * (s_ ** 2 - 1) ** 3 * X_ / (64 * t_))


def family19alt(X_, Y_, s_, t_):
    return Y_ ** 2 - X_ ** 3 - 4 * s_ ** 2 * X_ ** 2 + s_ ** 3 * (s_ - 1) ** 2 * X_ / t_


def quartic(s_, u_, Y_, t_):
    return Y_ ** 2 - (s_ ** 4 * (u_ / t_ + 64 * u_ ** 3 + 16 * u_ ** 2)
                      + s_ ** 3 * (192 * u_ ** 3 - 3 * u_ / t_)
                      + s_ ** 2 * (3 * u_ / t_ + 192 * u_ ** 3 - 32 * u_ ** 2)
                      + s_ * (64 * u_ ** 3 - u_ / t_) + 16 * u_ ** 2)


def altquartic(s_, u_, y_, t_):
    return y_ ** 2 - (s_ ** 4 * (64 * t_ * u_ ** 3 + 16 * t_ * u_ ** 2 + u_)
                      + s_ ** 3 * (192 * t_ * u_ ** 3 - 3 * u_)
                      + s_ ** 2 * (192 * t_ * u_ ** 3 - 32 * t_ * u_ ** 2 + 3 * u_)
                      + s_ * (64 * t_ * u_ ** 3 - u_) + 16 * t_ * u_ ** 2)


def inose(X_, Y_, u_, t_):
    return Y_ ** 2 - (X_ ** 3 - Rational(16, 3) * t_ ** 3 * (16 * t_ + 9) * X_ + 512 * t_ ** 5 * u_
                      + 8 * t_ ** 4 / u_ + Rational(8, 27) * (1024 * t_ ** 2 - 2592 * t_) * t_ ** 4)


def si_form(X_, Y_, u_, t_):
    return Y_ ** 2 - (X_ ** 3 - Rational(256, 3) * t_ * (16 * t_ + 9) * u_ ** 4 * X_
                      + Rational(512, 27) * t_ * u_ ** 5 * (32 * t_ * u_ * (32 * t_ + 54 * u_ - 81) + 27))


def si_params(x_, y_, un_, w_):
    t_ = w_ ** 4
    A = (16 * t_ + 9) / 9
    B = Rational(2, 27) * w_ ** 2 * (81 - 32 * t_)
    return y_ ** 2 - (x_ ** 3 - 3 * A * un_ ** 4 * x_ + un_ ** 5 * (un_ ** 2 - 2 * B * un_ + 1))


def f_cubic(T_):
    return T_ ** 3 - 2 * T_ ** 2 + half * (1 - S) * T_


def g_cubic(T_):
    return T_ ** 3 + 4 * T_ ** 2 + 2 * (1 + S) * T_


def x8(u_, v_, y_):
    return y_ ** 2 + (t * u_ ** 2 + (1 - t) * v_ ** 2) * (
        -2 * (t - 1) * t * ((u_ + 4) * u_ + 6) * v_ ** 2 - 8 * (t - 1) * t * (u_ + 2) * v_
        + t * (t * (u_ + 4) * u_ * (u_ + 2) ** 2 + 4) + (t - 1) ** 2 * v_ ** 4) / (8 * t ** 3)


def x7(x1_, x2_, y_):
    return y_ ** 2 - f_cubic(x1_) * g_cubic(x2_)


def x6(X_, Y_, x2_):
    G = g_cubic(x2_)
    return Y_ ** 2 - (X_ ** 3 - 2 * G * X_ ** 2 + half * (1 - S) * G ** 2 * X_)


def x5(x1_, x2_, u_):
    return f_cubic(x1_) - u_ ** 2 * g_cubic(x2_)


def x4(X_, Y_, u_):
    return (Y_ ** 2 + X_ ** 3 + X_ * Rational(16, 3) * (-25 + 9 * S ** 2) * u_ ** 4
            - 8 * (S - 1) ** 2 * (1 + S) * u_ ** 4 + Rational(256, 27) * (49 - 81 * S ** 2) * u_ ** 6
            + 512 * (S - 1) * (1 + S) ** 2 * u_ ** 8)


def x3(x_, y_, u_):
    return y_ ** 2 - (x_ ** 3 + Rational(16, 3) * (-25 + 9 * S ** 2) * u_ ** 4 * x_
                      + 8 * (S - 1) ** 2 * (1 + S) * u_ ** 4 + Rational(256, 27) * (-49 + 81 * S ** 2) * u_ ** 6
                      - 512 * (S - 1) * (1 + S) ** 2 * u_ ** 8)


def x2_model(x_, y_, u_):
    return y_ ** 2 - (x_ ** 3 - Rational(16, 3) * t ** 3 * (9 + 16 * t) * x_
                      + 8 * t ** 4 * (32 * u_ ** 2 * ((S + 1) * t * (32 * t + 108 * u_ ** 2 - 81) - 54 * u_ ** 2) + 27)
                      / (27 * (S + 1) * u_ ** 2))


def j_from_u(U_):
    return (U_ + 256) ** 3 / U_ ** 2


def j_from_ab(A_ab, B_ab):
    """j of y^2 = x^3 + A x^2 + B x."""
    return 256 * (A_ab ** 2 - 3 * B_ab) ** 3 / (B_ab ** 2 * (A_ab ** 2 - 4 * B_ab))


# section Q_t on the Inose model

def qt_point(u_, t_):
    qx = (128 * t_ * u_ * (u_ * (32 * t_ * (3 * (u_ - 2) * u_ + 1) - 3) - 3) + 3) / (768 * u_ ** 2)
    qy = ((1 - 64 * t_ * u_ ** 2) * (64 * t_ * u_ * (2 * u_ * (32 * t_ * (u_ - 2) * (u_ - 1) - 1) - 3) + 1)
          / (4096 * u_ ** 3))
    return qx, qy


# Shioda-Inose parameters

def si_h_form(h_):
    h6 = h_ ** 6
    return {
        "a": 8 * (3 * h6 - 8) / (3 * h_ ** 14 * (h6 - 2) ** 2),
        "b": 64 * (9 * h6 - 16) / (27 * h_ ** 21 * (h6 - 2) ** 3),
        "c": -2 * (3 * h6 + 2) / (3 * h_ ** 10 * (h6 - 2) ** 2),
        "d": 8 * (9 * h6 - 2) / (27 * h_ ** 15 * (h6 - 2) ** 3),
        "t": -1 / (h6 * (h6 - 2)),
    }


def si_g_form(g_, d_):
    g3 = g_ ** 3
    return {
        "a": 8 * (3 * g3 - 8) / (3 * g_ ** 7 * (g3 - 2) ** 2),
        "b": 512 * (81 * (g3 - 2) * g3 + 32) / (729 * d_ * g_ ** 18 * (g3 - 2) ** 6),
        "c": -2 * (3 * g3 + 2) / (3 * g_ ** 5 * (g3 - 2) ** 2),
        "t": -1 / (g3 * (g3 - 2)),
        "d_squared": 64 * (2 - 9 * g3) ** 2 / (729 * g_ ** 15 * (g3 - 2) ** 6),
    }


def si_system(a_, b_, c_, d_, t_):
    return (
        9 * a_ * c_ - 256 * t_ ** 4 - 144 * t_ ** 3,
        -729 * b_ * d_ + 16384 * t_ ** 6 - 41472 * t_ ** 5,
        -4 * c_ ** 3 - 27 * d_ ** 2 - 32 * t_ ** 4,
        -4 * a_ ** 3 - 27 * b_ ** 2 - 2048 * t_ ** 5,
    )


def _build_maps():
    G = g_cubic(x2)
    t_of_S = 1 / (1 - S ** 2)
    sp_s = (1 + sp) / (1 - sp)

    y_prime = t * Yq
    inose_X = t * (s * (192 * (s + 1) * t * u ** 2 - 32 * s * t * u + 3 * s - 3) + 96 * t * u - 24 * y_prime) / (
        12 * s ** 2 * u)
    inose_Y = t * (4 * t * u * (64 * (s ** 2 - 1) * t * u - 192 * s * (s + 1) ** 2 * t * u ** 2 + 3 * s * (s - 1) ** 2)
                   + y_prime * (s * (64 * t * u ** 2 - 1) + 64 * t * u)) / (8 * s ** 3 * u ** 2)

    tr = r ** 2
    si_X = u * (s * (192 * (s + 1) * tr * u ** 2 - 32 * s * tr * u + 3 * s - 3) + 96 * tr * u - 24 * r * y) / (
        3 * s ** 2)
    si_Y = u * (4 * r * u * (-64 * (s ** 2 - 1) * tr * u + 192 * s * (s + 1) ** 2 * tr * u ** 2 - 3 * s * (s - 1) ** 2)
                + y * (-64 * s * tr * u ** 2 + s - 64 * tr * u)) / s ** 3

    psi5_A = 2 * u ** 2 * (x1 * (3 * (S - 1) * (x2 + 4) + 16 * x1)
                           - 12 * (S + 1) * u ** 2 * (2 * S + x2 * (x2 + 4) + 2)) / (3 * x1 ** 2)
    psi5_B = -(2 * u ** 2 * (16 * (S + 1) ** 2 * u ** 4 * (2 * S + x2 * (x2 + 4) + 2)
                             - 4 * u ** 2 * x1 * (x2 * (S * (S + 4 * x1 + 8) + 4 * x1 - 9)
                                                  + 4 * (S + 1) * (2 * S - (x1 - 4) * x1 - 2)
                                                  + 2 * (S - 1) * x2 ** 2)
                             + (S - 1) * x1 ** 2 * (S + 2 * x1 - 1))) / x1 ** 3

    qx, qy = qt_point(u, t)
    q1x, q1y = qt_point(u, 1)
    t_psi = {t: t_of_S}
    w_r = -1 / (2 * w)

    h_vals = si_h_form(h)
    g_vals = si_g_form(h ** 2, h_vals["d"])

    maps = [
        RationalMap(
            "identity", "sanity entry: a curve mapped to itself",
            (x, y, t), (y ** 2 - x ** 3 - t,), y,
            ((X, x), (Y, y), (t, t)), (Y ** 2 - X ** 3 - t,)),
        RationalMap(
            "can1->weier1", "canonical form in (x, s, z) to the Weierstrass model over s",
            (x, s, z, t), (can1(x, s, z, t),), t,
            ((X, t - s * t / x), (Y, 8 * s * t * (s - x) * (s + 2 * z - 1) / x), (s, s), (t, t)),
            (weier1(X, Y, s, t),)),
        RationalMap(
            "canonical->three_star", "canonical surface to the three-star model",
            (x, y, z, t), (canonical(x, y, z, t),), t,
            ((s, (x + y) / (x - y)), (x, x), (z, z), (t, t)),
            (three_star(s, x, z, t),)),
        RationalMap(
            "three_star->family19", "three-star model to the rank-19 Weierstrass family",
            (s, x, z, t), (three_star(s, x, z, t),), t,
            ((X, 2 * (s - 1) ** 2 * s * x * (2 * s * x + s * z - s + z - 1)),
             (Y, (s - 1) ** 3 * s * x * (4 * s * x - s - 1) * (2 * s * x + s * z - s + z - 1)),
             (s, s), (t, t)),
            (family19(X, Y, s, t),)),
        RationalMap(
            "family19->family19alt", "automorphism of the base s -> (1+s)/(1-s)",
            (X, Y, sp, t), (family19(X, Y, sp, t),), t,
            ((Xa, X * (sp_s + 1) ** 4), (Ya, Y * (sp_s + 1) ** 6), (s, sp_s), (t, t)),
            (family19alt(Xa, Ya, s, t),)),
        RationalMap(
            "family19->quartic", "rank-19 family to the quartic double cover",
            (X, Y, s, t), (family19(X, Y, s, t),), t,
            ((u, X / ((s + 1) ** 3 * s)), (Yp, 8 * Y / (s * (1 + s) ** 3)), (s, s), (t, t)),
            (quartic(s, u, Yp, t),)),
        RationalMap(
            "quartic->inose", "quartic double cover to the Inose fibration",
            (s, u, Yq, t), (quartic(s, u, Yq, t),), t,
            ((X, inose_X), (Y, inose_Y), (u, u), (t, t)),
            (inose(X, Y, u, t),)),
        RationalMap(
            "family19->altquartic", "rank-19 family to the quartic with t = r^2",
            (X, Y, s, r), (family19(X, Y, s, r ** 2),), r,
            ((u, X / ((s + 1) ** 3 * s)), (y, 8 * r * Y / (s * (1 + s) ** 3)), (s, s), (r, r)),
            (altquartic(s, u, y, r ** 2),)),
        RationalMap(
            "altquartic->si_form", "quartic with t = r^2 to the Shioda-Inose form",
            (s, u, y, r), (altquartic(s, u, y, r ** 2),), r,
            ((X, si_X), (Y, si_Y), (u, u), (r, r)),
            (si_form(X, Y, u, r ** 2),)),
        RationalMap(
            "si_form->si_params", "Shioda-Inose form to the (A, B) normalisation, t = w^4",
            (X, u, w, Y), (si_form(X, Y, u, w ** 4),), Y,
            ((x, X / w_r ** 2), (y, Y / w_r ** 3), (un, 8 * w ** 2 * u), (w, w)),
            (si_params(x, y, un, w),)),
        # chain from X8 down to the Inose model, t = 1/(1 - S^2)
        RationalMap(
            "psi8", "X8 to X7: x1 = -(u - S v)/2, x2 = u + S v",
            (u, v, S, y), (x8(u, v, y),), y,
            ((x1, -half * (u - S * v)), (x2, u + S * v), (y, y), (S, S)),
            (x7(x1, x2, y),), tuple(t_psi.items())),
        RationalMap(
            "psi7", "X7 to X6",
            (x1, x2, S, y), (x7(x1, x2, y),), y,
            ((X, x1 * G), (Y, y * G), (x2, x2), (S, S)),
            (x6(X, Y, x2),), tuple(t_psi.items())),
        RationalMap(
            "psi6", "X6 to X5",
            (X, x2, S, Y), (x6(X, Y, x2),), Y,
            ((x1, X / G), (x2, x2), (u, Y / G ** 2), (S, S)),
            (x5(x1, x2, u),), tuple(t_psi.items())),
        RationalMap(
            "psi5", "X5 to X4",
            (x1, x2, S, u), (x5(x1, x2, u),), u,
            ((X, psi5_A), (Y, psi5_B), (u, u), (S, S)),
            (x4(X, Y, u),), tuple(t_psi.items())),
        RationalMap(
            "psi4", "X4 to X3: x = -X",
            (X, u, S, Y), (x4(X, Y, u),), Y,
            ((x, -X), (y, Y), (u, u), (S, S)),
            (x3(x, y, u),), tuple(t_psi.items())),
        RationalMap(
            "psi3", "X3 to X2: weighted rescaling by t/u",
            (x, u, S, y), (x3(x, y, u),), y,
            ((x, t ** 2 * x / u ** 2), (y, t ** 3 * y / u ** 3), (u, u), (S, S)),
            (x2_model(x, y, u),), tuple(t_psi.items())),
        RationalMap(
            "psi2", "X2 to the Inose model: u -> u^2 (1 + S)",
            (x, u, S, y), (x2_model(x, y, u),), y,
            ((X, x), (Y, y), (u, u ** 2 * (1 + S)), (S, S)),
            (inose(X, Y, u, t),), tuple(t_psi.items())),
        # free-parameter identities
        RationalMap(
            "qt", "section Q_t lies on the Inose model",
            (u, t), (), None,
            ((X, qx), (Y, qy), (u, u), (t, t)), (inose(X, Y, u, t),)),
        RationalMap(
            "qt_t1", "section Q_1 lies on the Inose model at t = 1",
            (u,), (), None,
            ((X, q1x), (Y, q1y), (u, u)), (inose(X, Y, u, 1),)),
        RationalMap(
            "si_h", "h-parametrisation solves the five-variable system",
            (h,), (), None,
            tuple(zip((a, b, E1, E2, t), (h_vals[k] for k in "abcdt"))),
            si_system(a, b, E1, E2, t)),
        RationalMap(
            "si_g", "g-parametrisation agrees with the h-parametrisation at g = h^2",
            (h,), (), None,
            ((Da, g_vals["a"] - h_vals["a"]), (Db, g_vals["b"] - h_vals["b"]),
             (Dc, g_vals["c"] - h_vals["c"]), (Dt, g_vals["t"] - h_vals["t"]),
             (Dsq, g_vals["d_squared"] - h_vals["d"] ** 2)),
            (Da, Db, Dc, Dt, Dsq)),
        RationalMap(
            "x0_2_e1", "j(-64(s-1)/(s+1)) is the j-invariant of E1 with S = s",
            (s,), (), None,
            ((U, -64 * (s - 1) / (s + 1)), (B_, (1 - s) / 2)),
            (j_from_u(U) - j_from_ab(-2, B_),)),
        RationalMap(
            "x0_2_e2", "j(-64(1+s)/(s-1)) is the j-invariant of E2 with S = s",
            (s,), (), None,
            ((U, -64 * (1 + s) / (s - 1)), (B_, 2 * (1 + s))),
            (j_from_u(U) - j_from_ab(4, B_),)),
        RationalMap(
            "x0_2_universal", "u = 256b/(a^2 - 4b) recovers j of y^2 = x^3 + a x^2 + b x",
            (a, b), (), None,
            ((U, 256 * b / (a ** 2 - 4 * b)), (A_, a), (B_, b)),
            (j_from_u(U) - j_from_ab(A_, B_),)),
        RationalMap(
            "x0_2_fricke", "u -> 4096/u is the 2-isogenous curve y^2 = x^3 - 2a x^2 + (a^2 - 4b) x",
            (a, b), (), None,
            ((U, 4096 * (a ** 2 - 4 * b) / (256 * b)), (A_, -2 * a), (B_, a ** 2 - 4 * b)),
            (j_from_u(U) - j_from_ab(A_, B_),)),
        RationalMap(
            "x0_2_s_t", "s = (8b - a^2)/a^2 and t = a^4/(16(a^2 - 4b) b) satisfy s^2 = (t-1)/t",
            (a, b), (), None,
            ((s, (-a ** 2 + 8 * b) / a ** 2), (t, a ** 4 / (16 * (a ** 2 - 4 * b) * b))),
            (s ** 2 - (t - 1) / t,)),
    ]
    return {m.name: m for m in maps}


CATALOG = _build_maps()

PSI_CHAIN = ("psi8", "psi7", "psi6", "psi5", "psi4", "psi3", "psi2")
X0_2_MAPS = ("x0_2_e1", "x0_2_e2", "x0_2_universal", "x0_2_fricke", "x0_2_s_t")
SI_MAPS = ("si_h", "si_g")
QT_MAPS = ("qt", "qt_t1")
