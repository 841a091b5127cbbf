"""Small finite field arithmetic, table driven.

Everything downstream enumerates projective points over F_p or F_{p^2} with
p at most a few hundred, so fields are represented by dense lookup tables:
an element of F_{p^2} = F_p(t), t^2 = s (s the smallest positive nonresidue
mod p), is encoded as the index a + p*b for a + t*b.  Degree 1 uses the same
interface with q = p.  All vectorised ops work on numpy int32 index arrays.
"""

from __future__ import annotations

import numpy as np
from sympy import isprime


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) in {-1, 0, 1} for an odd prime p."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def smallest_nonresidue(p: int) -> int:
    for s in range(2, p):
        if legendre(s, p) == -1:
            return s
    raise ValueError(f"no quadratic nonresidue found mod {p}")


def sqrt_mod(a: int, p: int) -> int:
    """A square root of a mod p (Tonelli-Shanks).  Raises if a is a nonresidue."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        raise ValueError(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, e = p - 1, 0
    while q % 2 == 0:
        q //= 2
        e += 1
    z = pow(smallest_nonresidue(p), q, p)
    x = pow(a, (q + 1) // 2, p)
    b = pow(a, q, p)
    while b != 1:
        # order of b is 2^m with 0 < m < e
        m, t = 0, b
        while t != 1:
            t = t * t % p
            m += 1
        c = pow(z, 1 << (e - m - 1), p)
        x = x * c % p
        z = c * c % p
        b = b * z % p
        e = m
    return x


# square classes are indexed by exponent vectors over the generators -1, 2, 3, 5
SQUARE_CLASS_GENERATORS = (-1, 2, 3, 5)


def square_class_char(d: int, p: int) -> int:
    """Quadratic character (d/p) for squarefree d with |d| dividing 30, p not in {2,3,5}.

    Evaluated multiplicatively through the generator decomposition of d over
    (-1, 2, 3, 5), which is how all downstream character bookkeeping is done.
    """
    if p in (2, 3, 5) or not isprime(p):
        raise ValueError(f"bad prime {p} for square class evaluation")
    bits = square_class_bits(d)
    val = 1
    for g, e in zip(SQUARE_CLASS_GENERATORS, bits):
        if e:
            val *= legendre(g % p, p)
    return val


def square_class_bits(d: int) -> tuple[int, int, int, int]:
    """Exponent vector of a squarefree divisor-of-30 class over (-1, 2, 3, 5)."""
    if d == 0:
        raise ValueError("0 has no square class")
    bits = [0, 0, 0, 0]
    if d < 0:
        bits[0] = 1
        d = -d
    for i, g in enumerate((2, 3, 5)):
        if d % g == 0:
            bits[i + 1] = 1
            d //= g
    if d != 1:
        raise ValueError("square class must be a squarefree divisor of 30 (up to sign)")
    return tuple(bits)


def square_class_from_bits(bits) -> int:
    d = 1
    for g, e in zip(SQUARE_CLASS_GENERATORS, bits):
        if e:
            d *= g
    return d


class FieldContext:
    """F_q with q = p or p^2, p an odd prime below 2^16.

    Elements are integer indices 0..q-1.  For degree 2 the index a + p*b
    denotes a + t*b with t^2 = s, s the smallest positive nonresidue mod p.
    Tables are built lazily; MUL is q x q so keep q <= ~1000 for degree 2.
    """

    def __init__(self, p: int, degree: int = 1):
        if not isprime(p) or p == 2 or p >= 1 << 16:
            raise ValueError(f"p must be an odd prime below 2^16, got {p}")
        if degree not in (1, 2):
            raise ValueError("degree must be 1 or 2")
        self.p = p
        self.degree = degree
        self.q = p**degree
        self.s = smallest_nonresidue(p)
        # verify the nonresidue claim rather than trusting the search
        assert pow(self.s, (p - 1) // 2, p) == p - 1
        self._mul = None
        self._chi = None
        self._pow = {}
        self._nonsquare = None

    # ---- element plumbing ----------------------------------------

    def embed(self, n: int) -> int:
        """Image of the rational integer n in F_q."""
        return n % self.p

    def decode(self, u: int) -> tuple[int, int]:
        return u % self.p, u // self.p

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int32)

    # ---- tables ----------------------------------------------------

    @property
    def MUL(self) -> np.ndarray:
        if self._mul is None:
            p, q = self.p, self.q
            if self.degree == 1:
                i = np.arange(q, dtype=np.int64)
                self._mul = ((i[:, None] * i[None, :]) % p).astype(np.int32)
            else:
                i = np.arange(q, dtype=np.int64)
                a, b = i % p, i // p
                a1, b1 = a[:, None], b[:, None]
                a2, b2 = a[None, :], b[None, :]
                re = (a1 * a2 + self.s * b1 * b2) % p
                im = (a1 * b2 + a2 * b1) % p
                self._mul = (re + p * im).astype(np.int32)
        return self._mul

    @property
    def CHI(self) -> np.ndarray:
        """Quadratic character of every element, int8; CHI[0] = 0."""
        if self._chi is None:
            p, q = self.p, self.q
            if self.degree == 1:
                chi = np.zeros(q, dtype=np.int8)
                for x in range(1, q):
                    chi[x] = legendre(x, p)
            else:
                i = np.arange(q, dtype=np.int64)
                a, b = i % p, i // p
                nrm = (a * a - self.s * b * b) % p
                leg = np.zeros(p, dtype=np.int8)
                for x in range(1, p):
                    leg[x] = legendre(x, p)
                chi = leg[nrm]
            self._chi = chi
        return self._chi

    def pow_table(self, k: int) -> np.ndarray:
        """Table of x^k for all x, with 0^0 := 1 and table[0] = 0 for k >= 1."""
        if k < 0:
            raise ValueError("k must be nonnegative")
        if k not in self._pow:
            if k == 0:
                tab = np.ones(self.q, dtype=np.int32)
            else:
                tab = self.elements().copy()
                mul = self.MUL
                for _ in range(k - 1):
                    tab = mul[tab, self.elements()]
                assert tab[0] == 0
            self._pow[k] = tab
        return self._pow[k]

    # ---- scalar and vector ops -------------------------------------

    def add(self, u, v):
        p = self.p
        if self.degree == 1:
            return (u + v) % p
        return (u % p + v % p) % p + p * ((u // p + v // p) % p)

    def neg(self, u):
        p = self.p
        if self.degree == 1:
            return (p - u) % p
        return (p - u % p) % p + p * ((p - u // p) % p)

    def sub(self, u, v):
        return self.add(u, self.neg(v))

    def mul(self, u, v):
        return self.MUL[u, v]

    def scale(self, c: int, v):
        """Multiply an index array by a fixed field element c."""
        return self.MUL[c][v]

    def power(self, u: int, k: int) -> int:
        """Scalar exponentiation by squaring through the MUL table."""
        if k == 0:
            return 1 % self.q if self.q > 1 else 0
        mul = self.MUL
        acc = 1
        base = int(u)
        while k:
            if k & 1:
                acc = int(mul[acc, base])
            base = int(mul[base, base])
            k >>= 1
        return acc

    def inv(self, u: int) -> int:
        if u == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.power(u, self.q - 2)

    def frobenius(self, u):
        """x -> x^p, computed honestly by square-and-multiply on tables."""
        if self.degree == 1:
            return u
        acc = np.ones(self.q, dtype=np.int32)
        base = self.elements().copy()
        k = self.p
        mul = self.MUL
        while k:
            if k & 1:
                acc = mul[acc, base]
            base = mul[base, base]
            k >>= 1
        return acc[u] if np.ndim(u) else int(acc[u])

    @property
    def nonsquare(self) -> int:
        """Smallest-index nonsquare of F_q (equals s for degree 1)."""
        if self._nonsquare is None:
            chi = self.CHI
            idx = int(np.nonzero(chi == -1)[0][0])
            self._nonsquare = idx
        return self._nonsquare

    def fourth_root_of_unity(self) -> int:
        """A primitive 4th root of unity; requires q = 1 mod 4."""
        if self.q % 4 != 1:
            raise ValueError(f"F_{self.q} has no primitive 4th root of unity")
        i4 = self.power(self.nonsquare, (self.q - 1) // 4)
        assert int(self.mul(i4, i4)) == self.embed(-1)
        return i4


def quadratic_character(ctx: FieldContext, u: int) -> int:
    """chi_2(u) in {-1, 0, +1}."""
    return int(ctx.CHI[u])


def quartic_character(ctx: FieldContext, u: int) -> int:
    """u^((q-1)/4), a 4th root of unity in the field (as an element index).

    Only defined when q = 1 mod 4; its square is the quadratic character.
    """
    if ctx.q % 4 != 1:
        raise ValueError(f"quartic character needs q = 1 mod 4, got q = {ctx.q}")
    return ctx.power(u, (ctx.q - 1) // 4)


def build_power_table(ctx: FieldContext, k: int) -> np.ndarray:
    return ctx.pow_table(k)
