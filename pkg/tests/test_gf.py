"""Field context tests.  Oracles are independent brute force computations."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from maschke.gf import (
    FieldContext,
    build_power_table,
    legendre,
    quadratic_character,
    quartic_character,
    smallest_nonresidue,
    sqrt_mod,
    square_class_bits,
    square_class_char,
    square_class_from_bits,
)

SMALL_PRIMES = [3, 7, 11, 13, 17, 19, 23, 29, 31]


def brute_square_set(ctx):
    """Independent oracle: the set of nonzero squares by direct squaring."""
    squares = set()
    for x in range(1, ctx.q):
        squares.add(int(ctx.MUL[x, x]))
    return squares


def test_legendre_examples():
    # 2 = 3^2 mod 7 so (2/7) = 1; 3 generates F_7^* so (3/7) = -1
    assert legendre(2, 7) == 1
    assert legendre(3, 7) == -1
    assert legendre(0, 7) == 0
    assert smallest_nonresidue(7) == 3
    assert smallest_nonresidue(13) == 2


@pytest.mark.parametrize("p", SMALL_PRIMES)
@pytest.mark.parametrize("degree", [1, 2])
def test_quadratic_character_against_square_set(p, degree):
    ctx = FieldContext(p, degree)
    squares = brute_square_set(ctx)
    assert len(squares) == (ctx.q - 1) // 2
    for x in range(ctx.q):
        expect = 0 if x == 0 else (1 if x in squares else -1)
        assert quadratic_character(ctx, x) == expect


@pytest.mark.parametrize("p", SMALL_PRIMES)
@pytest.mark.parametrize("degree", [1, 2])
def test_character_multiplicativity_exhaustive(p, degree):
    if degree == 2 and p > 13:
        pytest.skip("q^2 pair scan too large, smaller fields cover this")
    ctx = FieldContext(p, degree)
    chi = ctx.CHI.astype(int)
    prod = chi[:, None] * chi[None, :]
    assert np.array_equal(chi[ctx.MUL], prod)


@pytest.mark.parametrize("p", [5, 13, 17, 29])
def test_quartic_character(p):
    ctx = FieldContext(p, 1)
    i4 = ctx.fourth_root_of_unity()
    roots = {1, ctx.embed(-1), i4, ctx.neg(i4)}
    for x in range(1, p):
        c = quartic_character(ctx, x)
        assert c in roots
        # square of the quartic character is the quadratic one
        sq = int(ctx.MUL[c, c])
        assert sq == (1 if quadratic_character(ctx, x) == 1 else ctx.embed(-1))
    # F_13: 5^3 = 8 = sqrt(-1), so the quartic character of 5 is 8
    if p == 13:
        assert quartic_character(ctx, 5) == 8


def test_quartic_character_rejects_q_3_mod_4():
    ctx = FieldContext(7, 1)
    with pytest.raises(ValueError):
        quartic_character(ctx, 3)
    # but F_49 = F_7(t) has q = 1 mod 4 and the quartic character exists there
    ctx2 = FieldContext(7, 2)
    i4 = ctx2.fourth_root_of_unity()
    assert ctx2.mul(i4, i4) == ctx2.embed(-1)


@pytest.mark.parametrize("p,degree", [(7, 1), (13, 1), (7, 2), (11, 2)])
def test_power_table_conventions(p, degree):
    ctx = FieldContext(p, degree)
    t0 = build_power_table(ctx, 0)
    assert t0[0] == 1  # 0^0 := 1 by convention
    assert np.all(t0 == 1)
    for k in (1, 2, 4, 8):
        tk = build_power_table(ctx, k)
        assert tk[0] == 0
        assert tk[1] == 1


@pytest.mark.parametrize("p,degree", [(13, 1), (11, 2)])
def test_power_table_against_repeated_multiplication(p, degree):
    ctx = FieldContext(p, degree)
    rng = np.random.default_rng(20240817)
    xs = rng.integers(0, ctx.q, size=20)
    for k in (2, 3, 4, 8):
        tab = build_power_table(ctx, k)
        for x in xs:
            acc = 1
            for _ in range(k):
                acc = int(ctx.MUL[acc, int(x)])
            assert tab[x] == acc


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_frobenius_fixes_exactly_prime_field(p):
    ctx = FieldContext(p, 2)
    fr = ctx.frobenius(ctx.elements())
    fixed = np.nonzero(fr == ctx.elements())[0]
    assert set(fixed.tolist()) == set(range(p))  # F_p sits at indices 0..p-1
    # Frobenius is an involution on F_{p^2}
    assert np.array_equal(ctx.frobenius(fr), ctx.elements())


def test_field_context_validation():
    with pytest.raises(ValueError):
        FieldContext(4, 1)
    with pytest.raises(ValueError):
        FieldContext(2, 1)
    with pytest.raises(ValueError):
        FieldContext(7, 3)
    with pytest.raises(ValueError):
        FieldContext(65537, 1)  # 2^16 + 1 is prime but out of contract


def test_scalar_ops_roundtrip():
    ctx = FieldContext(11, 2)
    for u in (1, 5, 17, 100, 120):
        assert ctx.mul(u, ctx.inv(u)) == 1
        assert ctx.add(u, ctx.neg(u)) == 0
    with pytest.raises(ZeroDivisionError):
        ctx.inv(0)


def test_sqrt_mod():
    for p in (7, 11, 13, 17, 29, 41, 73):
        for a in range(p):
            if legendre(a, p) >= 0:
                r = sqrt_mod(a, p)
                assert r * r % p == a % p
    with pytest.raises(ValueError):
        sqrt_mod(smallest_nonresidue(23), 23)


def test_square_class_bits_roundtrip():
    classes = []
    for sign in (1, -1):
        for d in (1, 2, 3, 5, 6, 10, 15, 30):
            classes.append(sign * d)
    for d in classes:
        assert square_class_from_bits(square_class_bits(d)) == d
    with pytest.raises(ValueError):
        square_class_bits(7)
    with pytest.raises(ValueError):
        square_class_bits(0)


def test_square_class_char_matches_direct_legendre():
    for d in (-1, 2, -3, 5, 15, -15, 6, 30, -30):
        for p in (7, 11, 13, 17, 19, 23, 29, 31, 41, 241):
            assert square_class_char(d, p) == legendre(d % p, p)
    with pytest.raises(ValueError):
        square_class_char(3, 5)


@given(st.sampled_from([3, 7, 11, 13]), st.data())
def test_mul_commutes_and_distributes(p, data):
    ctx = FieldContext(p, 2)
    u = data.draw(st.integers(0, ctx.q - 1))
    v = data.draw(st.integers(0, ctx.q - 1))
    w = data.draw(st.integers(0, ctx.q - 1))
    assert ctx.mul(u, v) == ctx.mul(v, u)
    left = ctx.mul(u, ctx.add(v, w))
    right = ctx.add(ctx.mul(u, v), ctx.mul(u, w))
    assert left == right
