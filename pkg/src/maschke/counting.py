"""Point counting engines over F_p and F_{p^2}.

The octic F = 7E^2 - 6G + 168M is evaluated through power tables on every
chart of P^3(F_q); the double cover count is #P^3 + sum chi_2(F).  Twisted
counts compose Frobenius with one of the three involutions

    i1 = diag(1, 1, -1, -1)
    i2 : x1 -> -x1 composed with the swap x2 <-> x3
    i3 = diag(1, i, -i, -1)

and count fixed points.  Writing the i2 chart in the eigencoordinates
u = x2 + x3, v = x2 - x3 and inserting s^(k/4)-multipliers per monomial
(s the smallest nonresidue) turns each fixed-point count into a plain
character sum over P^3(F_q); i3 needs q = 1 mod 4.  The resulting counts
were cross-checked against the involution trace tables, which also fixes
the sign convention: no extra sign on any of the three character sums.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .gf import FieldContext
from .models import (
    BAD_PRIMES,
    DoubleCoverModel,
    EllipticCurveModel,
    WeightedHypersurface,
    WeierstrassModel,
)

_CTX_CACHE: dict[tuple[int, int], FieldContext] = {}

INVOLUTIONS = ("id", "i1", "i2", "i3")


def get_context(p: int, degree: int = 1) -> FieldContext:
    key = (p, degree)
    if key not in _CTX_CACHE:
        _CTX_CACHE[key] = FieldContext(p, degree)
    return _CTX_CACHE[key]


def _as_ctx(q) -> FieldContext:
    if isinstance(q, FieldContext):
        return q
    from sympy import isprime

    if isprime(q):
        return get_context(q, 1)
    r = int(round(q**0.5))
    if r * r == q and isprime(r):
        return get_context(r, 2)
    raise ValueError(f"q must be p or p^2 for an odd prime p, got {q}")


def projective_space_count(n: int, q: int) -> int:
    return (q ** (n + 1) - 1) // (q - 1)


def good_primes(bound: int, residue: int | None = None, modulus: int = 1) -> list[int]:
    """Primes <= bound away from {2, 3, 5}, optionally in a residue class."""
    from sympy import primerange

    out = []
    for p in primerange(2, bound + 1):
        if p in BAD_PRIMES:
            continue
        if residue is not None and p % modulus != residue:
            continue
        out.append(int(p))
    return out


# ---- chart enumeration of P^3 ---------------------------------------


def p3_charts(ctx: FieldContext, max_chunk: int = 4_000_000):
    """Yield (X0, X1, X2, X3) index arrays covering P^3(F_q) exactly once."""
    q = ctx.q
    els = ctx.elements()
    if q**3 <= max_chunk:
        n = q**3
        X1 = np.repeat(els, q * q)
        X2 = np.tile(np.repeat(els, q), q)
        X3 = np.tile(els, q * q)
        yield np.ones(n, dtype=np.int32), X1, X2, X3
    else:
        X2 = np.repeat(els, q)
        X3 = np.tile(els, q)
        ones = np.ones(q * q, dtype=np.int32)
        for a in range(q):
            yield ones, np.full(q * q, a, dtype=np.int32), X2, X3
    # x0 = 0, x1 = 1
    X2 = np.repeat(els, q)
    X3 = np.tile(els, q)
    z = np.zeros(q * q, dtype=np.int32)
    yield z, np.ones(q * q, dtype=np.int32), X2, X3
    # x0 = x1 = 0, x2 = 1
    z = np.zeros(q, dtype=np.int32)
    yield z, z, np.ones(q, dtype=np.int32), els.copy()
    # the point (0 : 0 : 0 : 1)
    one = np.ones(1, dtype=np.int32)
    zero = np.zeros(1, dtype=np.int32)
    yield zero, zero.copy(), zero.copy(), one


# ---- generic monomial evaluation -------------------------------------


def eval_monomials(ctx: FieldContext, model: WeightedHypersurface, coords) -> np.ndarray:
    """Evaluate the defining polynomial on index arrays, via power tables."""
    n = len(coords[0])
    acc = np.zeros(n, dtype=np.int32)
    mul = ctx.MUL
    for exps, c in model.monomials:
        term = np.full(n, ctx.embed(c), dtype=np.int32)
        for X, e in zip(coords, exps):
            if e:
                term = mul[term, ctx.pow_table(e)[X]]
        acc = ctx.add(acc, term)
    return acc


# ---- structured octic evaluation with involution twists -----------------


def _octic_twisted(ctx: FieldContext, variant: str, X0, X1, X2, X3) -> np.ndarray:
    p = ctx.p
    mul = ctx.MUL
    # the twist multiplier must be a nonsquare of F_q itself; for q = p^2 the
    # prime-field nonresidue becomes a square, so use the field-level one
    sq = ctx.nonsquare
    S = [1]
    for _ in range(6):
        S.append(int(mul[S[-1], sq]))

    def pw(X, k):
        return ctx.pow_table(k)[X]

    def emul(c_el, arr):
        return mul[c_el][arr]

    def cc(n: int, k: int = 0) -> int:
        """The field element n * sq^k for an integer constant n."""
        return int(mul[ctx.embed(n), S[k]])

    def add(*arrays):
        out = arrays[0]
        for a in arrays[1:]:
            out = ctx.add(out, a)
        return out

    if variant == "id":
        E = add(pw(X0, 4), pw(X1, 4), pw(X2, 4), pw(X3, 4))
        G = add(pw(X0, 8), pw(X1, 8), pw(X2, 8), pw(X3, 8))
        M = mul[mul[mul[pw(X0, 2), pw(X1, 2)], pw(X2, 2)], pw(X3, 2)]
    elif variant == "i1":
        E = add(pw(X0, 4), pw(X1, 4), emul(S[2], add(pw(X2, 4), pw(X3, 4))))
        G = add(pw(X0, 8), pw(X1, 8), emul(S[4], add(pw(X2, 8), pw(X3, 8))))
        M = emul(S[2], mul[mul[mul[pw(X0, 2), pw(X1, 2)], pw(X2, 2)], pw(X3, 2)])
    elif variant == "i2":
        # coordinates here are (x0, x1, u, v) with u = x2 + x3, v = x2 - x3
        U, V = X2, X3
        inv8 = ctx.embed(pow(8, -1, p))
        inv128 = ctx.embed(pow(128, -1, p))
        s_inv16 = cc(pow(16, -1, p), 1)
        U2, V2 = pw(U, 2), pw(V, 2)
        U4, V4 = pw(U, 4), pw(V, 4)
        E = add(
            pw(X0, 4),
            emul(S[2], pw(X1, 4)),
            emul(inv8, add(U4, emul(cc(6, 1), mul[U2, V2]), emul(S[2], V4))),
        )
        G = add(
            pw(X0, 8),
            emul(S[4], pw(X1, 8)),
            emul(
                inv128,
                add(
                    pw(U, 8),
                    emul(cc(28, 1), mul[mul[U4, U2], V2]),
                    emul(cc(70, 2), mul[U4, V4]),
                    emul(cc(28, 3), mul[U2, mul[V4, V2]]),
                    emul(S[4], pw(V, 8)),
                ),
            ),
        )
        w = ctx.sub(U2, emul(S[1], V2))
        M = emul(s_inv16, mul[mul[pw(X0, 2), pw(X1, 2)], mul[w, w]])
    elif variant == "i3":
        if ctx.q % 4 != 1:
            raise ValueError(f"i3 twist needs q = 1 mod 4, got q = {ctx.q}")
        E = add(
            pw(X0, 4),
            emul(S[3], pw(X1, 4)),
            emul(S[1], pw(X2, 4)),
            emul(S[2], pw(X3, 4)),
        )
        G = add(
            pw(X0, 8),
            emul(S[6], pw(X1, 8)),
            emul(S[2], pw(X2, 8)),
            emul(S[4], pw(X3, 8)),
        )
        M = emul(S[3], mul[mul[mul[pw(X0, 2), pw(X1, 2)], pw(X2, 2)], pw(X3, 2)])
    else:
        raise ValueError(f"unknown involution {variant!r}")

    return add(emul(ctx.embed(7), mul[E, E]), emul(ctx.embed(-6), G), emul(ctx.embed(168), M))


def octic_char_sum(q, variant: str = "id", cover_sign: int = 1) -> int:
    """sum over P^3(F_q) of chi_2(cover_sign * F_variant)."""
    ctx = _as_ctx(q)
    if ctx.p in BAD_PRIMES:
        raise ValueError(f"{ctx.p} is a bad prime for the octic")
    total = 0
    chi = ctx.CHI
    neg = ctx.embed(-1)
    for X0, X1, X2, X3 in p3_charts(ctx):
        F = _octic_twisted(ctx, variant, X0, X1, X2, X3)
        if cover_sign == -1:
            F = ctx.MUL[neg][F]
        total += int(chi[F].sum(dtype=np.int64))
    return total


def count_twisted(model: DoubleCoverModel, q, variant: str) -> int:
    """Fixed points of Frobenius composed with the involution on the double cover."""
    ctx = _as_ctx(q)
    return projective_space_count(3, ctx.q) + octic_char_sum(
        ctx, variant, model.cover_sign
    )


def count_double_cover(model: DoubleCoverModel, q) -> int:
    """#X(F_q) through the monomial form of the branch octic (no E/G/M shortcut)."""
    ctx = _as_ctx(q)
    if ctx.p in BAD_PRIMES:
        raise ValueError(f"{ctx.p} is a bad prime for the octic")
    chi = ctx.CHI
    neg = ctx.embed(-1)
    total = projective_space_count(3, ctx.q)
    for coords in p3_charts(ctx):
        F = eval_monomials(ctx, model.branch, coords)
        if model.cover_sign == -1:
            F = ctx.MUL[neg][F]
        total += int(chi[F].sum(dtype=np.int64))
    return total


def composed_point_counts(q, cover_sign: int = 1) -> dict[str, int]:
    """Counts N_iota for iota in (id, i1, i2, i3); i3 dropped when q = 3 mod 4."""
    ctx = _as_ctx(q)
    variants = INVOLUTIONS if ctx.q % 4 == 1 else INVOLUTIONS[:3]
    base = projective_space_count(3, ctx.q)
    return {v: base + octic_char_sum(ctx, v, cover_sign) for v in variants}


# ---- hypersurface counts ---------------------------------------------


def count_p3_hypersurface(model: WeightedHypersurface, q) -> int:
    ctx = _as_ctx(q)
    total = 0
    for coords in p3_charts(ctx):
        F = eval_monomials(ctx, model, coords)
        total += int((F == 0).sum())
    return total


def count_weighted_hypersurface(model: WeightedHypersurface, q) -> int:
    """Points of a hypersurface in weighted projective space over F_q.

    For weights (1,1,1,1) this is a chart count of P^3.  Otherwise the count
    is taken through the affine cone, (N_affine - 1)/(q - 1), with the
    divisibility asserted; this orbit-count convention is the one all the
    congruence cross-checks downstream are calibrated against.
    """
    ctx = _as_ctx(q)
    if all(w == 1 for w in model.weights):
        if model.nvars != 4:
            raise ValueError("only P^3 enumerations are supported")
        return count_p3_hypersurface(model, ctx)
    n_aff = _affine_zero_count(ctx, model)
    if (n_aff - 1) % (ctx.q - 1):
        raise ArithmeticError(
            f"cone count {n_aff} - 1 not divisible by q - 1 = {ctx.q - 1}"
        )
    return (n_aff - 1) // (ctx.q - 1)


def _affine_zero_count(ctx: FieldContext, model: WeightedHypersurface) -> int:
    q = ctx.q
    n = model.nvars
    els = ctx.elements()
    if n != 4:
        raise ValueError("affine cone enumeration implemented for 4 variables")
    X1 = np.repeat(els, q * q)
    X2 = np.tile(np.repeat(els, q), q)
    X3 = np.tile(els, q * q)
    total = 0
    for a in range(q):
        X0 = np.full(q**3, a, dtype=np.int32)
        F = eval_monomials(ctx, model, (X0, X1, X2, X3))
        total += int((F == 0).sum())
    return total


def count_double_cover_bruteforce(model: DoubleCoverModel, p: int) -> int:
    """Independent oracle: enumerate {(x, w): w^2 = sign*F(x)} in the affine
    cone of P(1,1,1,1,4) and divide out the free weighted G_m action."""
    ctx = _as_ctx(p)
    q = ctx.q
    els = ctx.elements()
    chi = ctx.CHI
    X1 = np.repeat(els, q * q)
    X2 = np.tile(np.repeat(els, q), q)
    X3 = np.tile(els, q * q)
    neg = ctx.embed(-1)
    pairs = 0
    for a in range(q):
        X0 = np.full(q**3, a, dtype=np.int32)
        F = eval_monomials(ctx, model.branch, (X0, X1, X2, X3))
        if model.cover_sign == -1:
            F = ctx.MUL[neg][F]
        # w-count for each x: 1 + chi(F)
        block = (1 + chi[F].astype(np.int64)).sum()
        pairs += int(block)
    pairs -= 1  # remove x = 0 (forces w = 0, the excluded origin)
    assert pairs % (q - 1) == 0
    return pairs // (q - 1)


# ---- elliptic curves and elliptic surfaces ------------------------------


def count_elliptic_curve(model: EllipticCurveModel, q, twist: int = 1) -> int:
    """#E(F_q) for the projective Weierstrass curve, odd q, via a character sum."""
    ctx = _as_ctx(q)
    A, B, C = model.completed_square()
    chi = ctx.CHI
    mul = ctx.MUL
    x = ctx.elements()
    g = ctx.add(
        ctx.add(mul[ctx.embed(4)][ctx.pow_table(3)[x]], mul[ctx.embed(A)][ctx.pow_table(2)[x]]),
        ctx.add(mul[ctx.embed(B)][x], np.full(ctx.q, ctx.embed(C), dtype=np.int32)),
    )
    if twist != 1:
        g = mul[ctx.embed(twist)][g]
    return ctx.q + 1 + int(chi[g].sum(dtype=np.int64))


def ap_elliptic(model: EllipticCurveModel, p: int) -> int:
    """Frobenius trace a_p = p + 1 - #E(F_p)."""
    return p + 1 - count_elliptic_curve(model, p)


def _poly_mod(coeffs: list[Fraction], p: int) -> np.ndarray:
    out = []
    for c in coeffs:
        if c.denominator % p == 0:
            raise ValueError(f"coefficient {c} not p-integral at {p}")
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    return np.array(out, dtype=np.int64)


def count_elliptic_surface(model: WeierstrassModel, p: int, twist: int = 1) -> int:
    """Points of the Weierstrass total space y^2 = x(x^2 + a(t)x + b(t))
    over F_p, fibers over all of P^1 including t = infinity (s^4, s^8 chart)."""
    ctx = _as_ctx(p)
    if ctx.degree != 1:
        raise ValueError("surface counts are implemented over prime fields")
    ca, cb = model.coeff_lists()
    ca = ca + [Fraction(0)] * (5 - len(ca))
    cb = cb + [Fraction(0)] * (9 - len(cb))
    amod = _poly_mod(ca, p)
    bmod = _poly_mod(cb, p)
    ts = np.arange(p, dtype=np.int64)
    a_t = np.zeros(p, dtype=np.int64)
    b_t = np.zeros(p, dtype=np.int64)
    for k in range(4, -1, -1):
        a_t = (a_t * ts + amod[k]) % p
    for k in range(8, -1, -1):
        b_t = (b_t * ts + bmod[k]) % p
    # fiber at infinity: leading K3-normalised coefficients
    a_inf = int(amod[4])
    b_inf = int(bmod[8])
    a_all = np.concatenate([a_t, [a_inf]])
    b_all = np.concatenate([b_t, [b_inf]])
    chi = ctx.CHI
    xs = np.arange(p, dtype=np.int64)
    total = 0
    tw = twist % p
    for a, b in zip(a_all, b_all):
        f = (xs * ((xs * (xs + a) + b) % p)) % p
        if twist != 1:
            f = f * tw % p
        total += p + 1 + int(chi[f].sum(dtype=np.int64))
    return total


def surface_counts_catalog(catalog, p: int) -> dict[str, int]:
    """Counts of S1, ..., S5 (and the auxiliary S4 model) over F_p."""
    out = {"S1": count_weighted_hypersurface(catalog.S1, p)}
    for name in ("S2", "S3", "S4", "S4_aux", "S5"):
        out[name] = count_elliptic_surface(catalog[name], p)
    return out
