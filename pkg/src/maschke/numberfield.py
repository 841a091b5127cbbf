"""Exact arithmetic in K = Q(sqrt3, sqrt-5) and the modular polynomial checks.

Elements are stored on the basis (1, sqrt3, sqrt-5, sqrt-15) with Fraction
components, so every identity in the isogeny chain is verified exactly, no
floating point anywhere.  The three nontrivial automorphisms are named by
the quadratic subfield they fix: sigma3 fixes Q(sqrt3), sigma_m5 fixes
Q(sqrt-5), sigma_m15 fixes Q(sqrt-15).
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .gf import FieldContext, legendre, sqrt_mod

_Q = Fraction


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"cannot coerce {v!r} into Q")


class NFElem:
    """w + x sqrt3 + y sqrt-5 + z sqrt-15 with rational components."""

    __slots__ = ("w", "x", "y", "z")

    def __init__(self, w=0, x=0, y=0, z=0):
        self.w = _frac(w)
        self.x = _frac(x)
        self.y = _frac(y)
        self.z = _frac(z)

    @staticmethod
    def rational(c) -> "NFElem":
        return NFElem(c, 0, 0, 0)

    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.w, self.x, self.y, self.z)

    # ---- ring structure ------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        return NFElem(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __neg__(self):
        return NFElem(-self.w, -self.x, -self.y, -self.z)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        w1, x1, y1, z1 = self.components()
        w2, x2, y2, z2 = o.components()
        # with sqrt-15 := sqrt3 * sqrt-5:
        #   sqrt3*sqrt-15 = 3 sqrt-5,  sqrt-5*sqrt-15 = -5 sqrt3
        return NFElem(
            w1 * w2 + 3 * x1 * x2 - 5 * y1 * y2 - 15 * z1 * z2,
            w1 * x2 + x1 * w2 - 5 * (y1 * z2 + z1 * y2),
            w1 * y2 + y1 * w2 + 3 * (x1 * z2 + z1 * x2),
            w1 * z2 + z1 * w2 + x1 * y2 + y1 * x2,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        acc = NFElem.rational(1)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def __eq__(self, other):
        try:
            o = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.components() == o.components()

    def __hash__(self):
        return hash(self.components())

    def __repr__(self):
        return f"NFElem({self.w}, {self.x}, {self.y}, {self.z})"

    # ---- field structure -----------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.components())

    def is_rational(self) -> bool:
        return self.x == 0 and self.y == 0 and self.z == 0

    def sigma3(self) -> "NFElem":
        return NFElem(self.w, self.x, -self.y, -self.z)

    def sigma_m5(self) -> "NFElem":
        return NFElem(self.w, -self.x, self.y, -self.z)

    def sigma_m15(self) -> "NFElem":
        return NFElem(self.w, -self.x, -self.y, self.z)

    def conjugates(self) -> list["NFElem"]:
        return [self, self.sigma3(), self.sigma_m5(), self.sigma_m15()]

    def norm(self) -> Fraction:
        prod = NFElem.rational(1)
        for c in self.conjugates():
            prod = prod * c
        assert prod.is_rational(), "norm must land in Q"
        return prod.w

    def inverse(self) -> "NFElem":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in K")
        cof = self.sigma3() * self.sigma_m5() * self.sigma_m15()
        n = self * cof
        assert n.is_rational() and n.w != 0
        return cof * NFElem.rational(Fraction(1) / n.w)

    # ---- reduction mod primes --------------------------------------

    def reduce_mod(self, p: int, r3: int, r5: int) -> int:
        """Image in F_p under sqrt3 -> r3, sqrt-5 -> r5 (degree-1 prime of K)."""
        if (r3 * r3 - 3) % p or (r5 * r5 + 5) % p:
            raise ValueError("r3, r5 must satisfy r3^2 = 3 and r5^2 = -5 mod p")
        val = 0
        for c, root in zip(self.components(), (1, r3, r5, r3 * r5 % p)):
            if c.denominator % p == 0:
                raise ValueError(f"denominator of {c} not invertible mod {p}")
            val += c.numerator * pow(c.denominator, -1, p) * root
        return val % p


def _coerce(v) -> NFElem:
    if isinstance(v, NFElem):
        return v
    if isinstance(v, (int, Fraction)):
        return NFElem.rational(v)
    raise TypeError(f"cannot coerce {v!r} into K")


SQRT3 = NFElem(0, 1, 0, 0)
SQRTM5 = NFElem(0, 0, 1, 0)
SQRTM15 = NFElem(0, 0, 0, 1)


def splits_completely(p: int) -> bool:
    """True when p splits completely in K, i.e. 3 and -5 are both squares mod p."""
    return p not in (2, 3, 5) and legendre(3, p) == 1 and legendre(-5, p) == 1


def embeddings(p: int) -> list[tuple[int, int]]:
    """The four reductions (r3, r5) of (sqrt3, sqrt-5) at a totally split p."""
    if not splits_completely(p):
        raise ValueError(f"{p} does not split completely in K")
    r3 = sqrt_mod(3, p)
    r5 = sqrt_mod(-5 % p, p)
    return [(r3, r5), (r3, p - r5), (p - r3, r5), (p - r3, p - r5)]


def sqrt_in_ctx(ctx: FieldContext, n: int) -> int:
    """An element of F_q squaring to n (n an integer), encoded for ctx.

    Every integer has a square root in F_{p^2}; over F_p this needs n to be
    a residue.
    """
    p = ctx.p
    n %= p
    if n == 0:
        return 0
    if legendre(n, p) == 1:
        return sqrt_mod(n, p)
    if ctx.degree == 1:
        raise ValueError(f"{n} is not a square mod {p}")
    # n/s is then a residue and (t*b)^2 = s b^2 = n
    b = sqrt_mod(n * pow(ctx.s, -1, p) % p, p)
    return p * b


def embeddings_fp2(ctx: FieldContext) -> list[tuple[int, int]]:
    """All four (r3, r5) pairs in F_{p^2}; matching against heavier data is deferred."""
    if ctx.degree != 2:
        raise ValueError("use embeddings() for degree 1")
    r3 = sqrt_in_ctx(ctx, 3)
    r5 = sqrt_in_ctx(ctx, -5)
    return [(r3, r5), (r3, ctx.neg(r5)), (ctx.neg(r3), r5), (ctx.neg(r3), ctx.neg(r5))]


# ---- modular polynomials -------------------------------------------


class ModularPolynomial:
    """Symmetric classical modular polynomial Phi_ell(x, y), integer coefficients."""

    def __init__(self, ell: int, coeffs: dict[tuple[int, int], int]):
        self.ell = ell
        full = {}
        for (i, j), c in coeffs.items():
            full[(i, j)] = c
            full[(j, i)] = c
        self.coeffs = full
        d = ell + 1
        if full.get((d, 0), 0) != 1:
            raise ValueError(f"Phi_{ell} must be monic of degree {d} in x")

    @property
    def degree(self) -> int:
        return self.ell + 1

    def evaluate(self, x: NFElem, y: NFElem) -> NFElem:
        xp = _powers(x, self.degree)
        yp = _powers(y, self.degree)
        acc = NFElem.rational(0)
        for (i, j), c in self.coeffs.items():
            acc = acc + xp[i] * yp[j] * c
        return acc

    def univariate(self, x_value: NFElem) -> list[NFElem]:
        """Coefficients (ascending in y) of Phi(x_value, y)."""
        xp = _powers(x_value, self.degree)
        out = [NFElem.rational(0) for _ in range(self.degree + 1)]
        for (i, j), c in self.coeffs.items():
            out[j] = out[j] + xp[i] * c
        return out

    def as_sympy(self):
        import sympy as sp

        x, y = sp.symbols("x y")
        acc = sp.Integer(0)
        for (i, j), c in self.coeffs.items():
            acc += sp.Integer(c) * x**i * y**j
        return acc, x, y


def _powers(v: NFElem, n: int) -> list[NFElem]:
    out = [NFElem.rational(1)]
    for _ in range(n):
        out.append(out[-1] * v)
    return out


def load_modular_polynomial(path) -> ModularPolynomial:
    """Read an ell / 'i j c' coefficient file; symmetric closure implied."""
    lines = Path(path).read_text().strip().splitlines()
    body = [ln for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
    ell = int(body[0])
    coeffs: dict[tuple[int, int], int] = {}
    for ln in body[1:]:
        si, sj, sc = ln.split()
        i, j, c = int(si), int(sj), int(sc)
        for key in ((i, j), (j, i)):
            if key in coeffs and coeffs[key] != c:
                raise ValueError(f"conflicting duplicate coefficient at {key}")
        coeffs[(i, j)] = c
    return ModularPolynomial(ell, coeffs)


def modular_poly_check(phi: ModularPolynomial, jx: NFElem, jy: NFElem) -> NFElem:
    """Phi(jx, jy), exactly.  Zero means the two j-invariants are ell-isogenous."""
    return phi.evaluate(jx, jy)


# ---- resultants over K ---------------------------------------------


def sylvester_matrix(P: list[NFElem], Q: list[NFElem]) -> list[list[NFElem]]:
    """Sylvester matrix of the (ascending-coefficient) polynomials P, Q."""
    m = len(P) - 1
    n = len(Q) - 1
    if m < 1 or n < 1:
        raise ValueError("need two nonconstant polynomials")
    size = m + n
    zero = NFElem.rational(0)
    rows = []
    pd = list(reversed(P))  # descending
    qd = list(reversed(Q))
    for k in range(n):
        rows.append([zero] * k + pd + [zero] * (size - m - 1 - k))
    for k in range(m):
        rows.append([zero] * k + qd + [zero] * (size - n - 1 - k))
    return rows


def kdet(rows: list[list[NFElem]]) -> NFElem:
    """Determinant over K by Gaussian elimination with exact division."""
    n = len(rows)
    mat = [row[:] for row in rows]
    det = NFElem.rational(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if not mat[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            return NFElem.rational(0)
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        pv = mat[col][col]
        det = det * pv
        inv = pv.inverse()
        for r in range(col + 1, n):
            if mat[r][col].is_zero():
                continue
            factor = mat[r][col] * inv
            mat[r] = [mat[r][c] - factor * mat[col][c] for c in range(n)]
    return det


def resultant(P: list[NFElem], Q: list[NFElem]) -> NFElem:
    return kdet(sylvester_matrix(P, Q))
