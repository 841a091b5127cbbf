"""Model catalog: Maschke's octic S, the double octic X, the K3 fibrations
and the elliptic curve E over Q(sqrt3, sqrt-5).

S is the invariant octic surface in P^3

    F = sum_i x_i^8 + 14 sum_{i<j} x_i^4 x_j^4 + 168 x_0^2 x_1^2 x_2^2 x_3^2,

equivalently F = 7E^2 - 6G + 168M with E = sum x_i^4, G = sum x_i^8,
M = prod x_i^2.  X is the double cover w^2 = F in P(1,1,1,1,4).  S_1 is the
quotient K3 written as a degree 8 hypersurface in P(1,1,2,4) through the
invariants y = x_2^2 + x_3^2, z = x_2^2 x_3^2.  S_2, ..., S_5 are elliptic
K3 surfaces y^2 = x(x^2 + a(t)x + b(t)) forming the 2-isogeny chain, with
S_4_aux the alternative parametrisation of S_4.  E is the elliptic curve
over K = Q(sqrt3, sqrt-5) at the end of the chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy as sp

from . import numberfield as nf

BAD_PRIMES = (2, 3, 5)

t = sp.Symbol("t")


@dataclass(frozen=True)
class WeightedHypersurface:
    """A hypersurface in a weighted projective space, given by its monomials.

    monomials is a tuple of (exponent tuple, integer coefficient).  The
    weighted degree must be the same for every monomial.
    """

    name: str
    weights: tuple[int, ...]
    monomials: tuple[tuple[tuple[int, ...], int], ...]

    def __post_init__(self):
        degs = {
            sum(w * e for w, e in zip(self.weights, exps))
            for exps, _ in self.monomials
        }
        # empty tuple = the zero polynomial, whose locus is the whole space
        if len(degs) > 1:
            raise ValueError(f"{self.name}: monomials are not weighted-homogeneous: {degs}")

    @property
    def degree(self) -> int:
        if not self.monomials:
            return 0
        exps, _ = self.monomials[0]
        return sum(w * e for w, e in zip(self.weights, exps))

    @property
    def nvars(self) -> int:
        return len(self.weights)

    def as_expr(self, symbols):
        out = sp.Integer(0)
        for exps, c in self.monomials:
            mono = sp.Integer(c)
            for x, e in zip(symbols, exps):
                mono *= x**e
            out += mono
        return out


@dataclass(frozen=True)
class DoubleCoverModel:
    """w^2 = cover_sign * F(x) in P(weights, degree/2 * ...), branch an octic."""

    name: str
    branch: WeightedHypersurface
    cover_sign: int = 1

    def __post_init__(self):
        if self.cover_sign not in (1, -1):
            raise ValueError("cover_sign must be +1 or -1")


@dataclass(frozen=True)
class EllipticCurveModel:
    """Elliptic curve over Q by a-invariants (a1, a2, a3, a4, a6)."""

    name: str
    a_invariants: tuple[int, int, int, int, int]

    def completed_square(self) -> tuple[int, int, int]:
        """(A, B, C) with (2y + a1 x + a3)^2 = 4x^3 + A x^2 + B x + C."""
        a1, a2, a3, a4, a6 = self.a_invariants
        return (a1 * a1 + 4 * a2, 2 * a1 * a3 + 4 * a4, a3 * a3 + 4 * a6)


@dataclass(frozen=True)
class WeierstrassModel:
    """Elliptic K3 fibration y^2 = x(x^2 + a(t)x + b(t)).

    deg a <= 4 and deg b <= 8 so that the total space is a K3 surface
    (section heights normalised at t = infinity by s^4, s^8 rescaling).
    """

    name: str
    a: sp.Expr
    b: sp.Expr

    def __post_init__(self):
        pa = sp.Poly(sp.expand(self.a), t)
        pb = sp.Poly(sp.expand(self.b), t)
        if pa.degree() > 4 or pb.degree() > 8:
            raise ValueError(f"{self.name}: deg a <= 4 and deg b <= 8 required")
        if sp.expand(self.disc()) == 0:
            raise ValueError(f"{self.name}: identically singular (disc = 0)")

    def disc(self) -> sp.Expr:
        # discriminant of y^2 = x(x^2+ax+b), up to the usual factor 16
        return sp.expand(16 * self.b**2 * (self.a**2 - 4 * self.b))

    def c4(self) -> sp.Expr:
        return sp.expand(16 * self.a**2 - 48 * self.b)

    def c6(self) -> sp.Expr:
        return sp.expand(-64 * self.a**3 + 288 * self.a * self.b)

    def coeff_lists(self) -> tuple[list[Fraction], list[Fraction]]:
        """Ascending coefficient lists of a and b, as Fractions."""
        pa = sp.Poly(sp.expand(self.a), t)
        pb = sp.Poly(sp.expand(self.b), t)
        ca = [Fraction(str(c)) for c in reversed(pa.all_coeffs())] if pa.degree() >= 0 else []
        cb = [Fraction(str(c)) for c in reversed(pb.all_coeffs())] if pb.degree() >= 0 else []
        return ca, cb

    def at_infinity(self) -> "WeierstrassModel":
        """The s = 1/t chart with the K3 rescaling a -> s^4 a(1/s), b -> s^8 b(1/s)."""
        s = t  # reuse the same symbol for the chart coordinate
        a_inf = sp.expand(s**4 * self.a.subs(t, 1 / s))
        b_inf = sp.expand(s**8 * self.b.subs(t, 1 / s))
        return WeierstrassModel(self.name + "_inf", a_inf, b_inf)


@dataclass(frozen=True)
class KCurveModel:
    """Short Weierstrass curve y^2 = x^3 + A x + B over K = Q(sqrt3, sqrt-5)."""

    name: str
    A: nf.NFElem
    B: nf.NFElem

    def j_invariant(self) -> nf.NFElem:
        A3 = self.A * self.A * self.A
        disc = A3 * 4 + self.B * self.B * 27
        return A3 * 6912 / disc


def _octic_monomials() -> tuple:
    mons = []
    for i in range(4):
        e = [0, 0, 0, 0]
        e[i] = 8
        mons.append((tuple(e), 1))
    for i in range(4):
        for j in range(i + 1, 4):
            e = [0, 0, 0, 0]
            e[i] = 4
            e[j] = 4
            mons.append((tuple(e), 14))
    mons.append(((2, 2, 2, 2), 168))
    return tuple(mons)


def _s1_monomials() -> tuple:
    # S restricted to the invariants (x0, x1, y, z) with y = x2^2 + x3^2 and
    # z = x2^2 x3^2; weights (1, 1, 2, 4), weighted degree 8.
    return (
        ((8, 0, 0, 0), 1),
        ((0, 8, 0, 0), 1),
        ((4, 4, 0, 0), 14),
        ((0, 0, 4, 0), 1),
        ((0, 0, 2, 1), -4),
        ((0, 0, 0, 2), 16),
        ((4, 0, 2, 0), 14),
        ((0, 4, 2, 0), 14),
        ((4, 0, 0, 1), -28),
        ((0, 4, 0, 1), -28),
        ((2, 2, 0, 1), 168),
    )


def _curve_E() -> KCurveModel:
    # which complex root each radical symbol denotes is a free labeling;
    # signs here are normalised so that j(E) = 192632 - 111328 sqrt3
    # - 145824 sqrt-5 + 84280 sqrt-15 on the nose
    one = nf.NFElem.rational(1)
    c = nf.NFElem(3, 0, 0, -1)  # 3 - sqrt(-15)
    g = nf.NFElem(-11, Fraction(24, 5), 8, -3)
    A = c * c * g * Fraction(-648, 25)
    g2 = nf.NFElem(Fraction(-77, 5), Fraction(72, 5), Fraction(56, 5), -9)
    u = one + nf.NFElem(0, 0, Fraction(4, 5), 0)  # 1 + (4/5) sqrt(-5)
    B = c * c * c * (-nf.SQRT3) * u * g2 * Fraction(-5184, 125)
    return KCurveModel("E", A, B)


@dataclass(frozen=True)
class Catalog:
    S: WeightedHypersurface
    X: DoubleCoverModel
    S1: WeightedHypersurface
    S2: WeierstrassModel
    S3: WeierstrassModel
    S4: WeierstrassModel
    S4_aux: WeierstrassModel
    S5: WeierstrassModel
    E: KCurveModel

    def __getitem__(self, key: str):
        key = key.replace("-", "_")
        if not hasattr(self, key):
            raise KeyError(key)
        return getattr(self, key)

    def names(self):
        return ["S", "X", "S1", "S2", "S3", "S4", "S4_aux", "S5", "E"]


def maschke_catalog() -> Catalog:
    S = WeightedHypersurface("S", (1, 1, 1, 1), _octic_monomials())
    X = DoubleCoverModel("X", S, cover_sign=1)
    S1 = WeightedHypersurface("S1", (1, 1, 2, 4), _s1_monomials())
    S2 = WeierstrassModel(
        "S2",
        21 * (t**2 + 1) ** 2,
        144 * (t**4 + 2 * t**3 + 2 * t**2 - 2 * t + 1)
        * (t**4 - 2 * t**3 + 2 * t**2 + 2 * t + 1),
    )
    S3 = WeierstrassModel(
        "S3",
        6 * (4 * t + 7) * (t - 2) * (t + 2),
        9 * (2 * t + 5) * (6 * t + 13) * (t - 2) ** 2 * (t + 2) ** 2,
    )
    S4 = WeierstrassModel(
        "S4",
        -3 * (4 * t + 7) * (t - 2) * (t + 2),
        9 * (t - 2) ** 3 * (t + 2) ** 3,
    )
    S4_aux = WeierstrassModel(
        "S4_aux",
        -2 * t * (2 * t**2 - 21 * t - 18),
        3 * t**3 * (t - 12) * (4 * t - 45),
    )
    S5 = WeierstrassModel(
        "S5",
        -21 * t**2,
        -(t**3) * (t**2 - 126 * t + 81),
    )
    return Catalog(S=S, X=X, S1=S1, S2=S2, S3=S3, S4=S4, S4_aux=S4_aux, S5=S5, E=_curve_E())
