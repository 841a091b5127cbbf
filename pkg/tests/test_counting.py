"""Point-count engine tests.  Every expected number here is either a frozen
value from an independent enumeration (brute force over all coordinates) or
a closed formula."""

import pytest

from maschke.counting import (
    composed_point_counts,
    count_double_cover,
    count_double_cover_bruteforce,
    count_elliptic_curve,
    count_elliptic_surface,
    count_p3_hypersurface,
    count_weighted_hypersurface,
    get_context,
    good_primes,
    octic_char_sum,
    projective_space_count,
    surface_counts_catalog,
)
from maschke.gf import legendre
from maschke.models import (
    DoubleCoverModel,
    EllipticCurveModel,
    WeightedHypersurface,
    maschke_catalog,
)

CAT = maschke_catalog()

# octic surface counts over F_p, frozen from direct evaluation
S_COUNTS = {7: 64, 11: 0, 13: 880, 17: 0, 19: 256}

# double octic counts over F_p
X_COUNTS = {7: 400, 11: 1680, 13: 1000}

# composed (Frobenius x involution) counts at p = 13
TWISTED_13 = {"id": 1000, "i1": 2248, "i2": 2248, "i3": 1784}

# Weierstrass total-space counts (fiber over P^1 including infinity)
SURFACE_TABLE = {
    7: {"S1": 50, "S2": 64, "S3": 64, "S4": 64, "S4_aux": 64, "S5": 64},
    11: {"S1": 80, "S2": 80, "S3": 146, "S4": 146, "S4_aux": 146, "S5": 146},
    13: {"S1": 302, "S2": 224, "S3": 198, "S4": 198, "S4_aux": 198, "S5": 198},
    17: {"S1": 312, "S2": 312, "S3": 346, "S4": 346, "S4_aux": 346, "S5": 346},
    19: {"S1": 298, "S2": 336, "S3": 374, "S4": 374, "S4_aux": 374, "S5": 374},
}


def test_projective_space_formula():
    empty = WeightedHypersurface("P3", (1, 1, 1, 1), ())
    qs = [q for q in good_primes(169) if q <= 169]
    qs += [49, 121, 169]
    for q in qs:
        assert count_weighted_hypersurface(empty, q) == projective_space_count(3, q)
    assert projective_space_count(3, 7) == 400


def test_good_primes_helper():
    assert good_primes(31) == [7, 11, 13, 17, 19, 23, 29, 31]
    assert good_primes(31, residue=1, modulus=4) == [13, 17, 29]
    assert good_primes(31, residue=3, modulus=4) == [7, 11, 19, 23, 31]


@pytest.mark.parametrize("p", sorted(S_COUNTS))
def test_octic_surface_counts(p):
    assert count_p3_hypersurface(CAT.S, p) == S_COUNTS[p]


@pytest.mark.parametrize("p", sorted(X_COUNTS))
def test_double_cover_counts(p):
    assert count_double_cover(CAT.X, p) == X_COUNTS[p]


@pytest.mark.parametrize("p", [7, 11, 13])
def test_double_cover_against_bruteforce(p):
    assert count_double_cover_bruteforce(CAT.X, p) == X_COUNTS[p]


@pytest.mark.parametrize("p", [7, 11, 13])
def test_octic_dual_evaluation_routes(p):
    # monomial evaluation vs the structured 7E^2 - 6G + 168M route
    assert count_double_cover(CAT.X, p) == projective_space_count(
        3, p
    ) + octic_char_sum(p, "id", 1)


def test_composed_counts_p13():
    assert composed_point_counts(13) == TWISTED_13


def test_composed_counts_drop_i3_at_3_mod_4():
    counts = composed_point_counts(11)
    assert set(counts) == {"id", "i1", "i2"}
    with pytest.raises(ValueError):
        octic_char_sum(11, "i3")


def test_i3_defined_over_fp2():
    counts = composed_point_counts(7**2)
    assert set(counts) == {"id", "i1", "i2", "i3"}


def test_bad_prime_rejected():
    with pytest.raises(ValueError):
        count_double_cover(CAT.X, 5)


def test_cover_twist_involution():
    # chi(-F) = chi(-1) chi(F), so twisting the cover twice restores the
    # count, and the +/- covers agree exactly when -1 is a square
    for p in good_primes(31):
        plus = octic_char_sum(p, "id", 1)
        minus = octic_char_sum(p, "id", -1)
        assert minus == legendre(p - 1, p) * plus
        twice = DoubleCoverModel("XX", CAT.S, cover_sign=(-1) * (-1))
        assert count_double_cover(twice, p) == count_double_cover(CAT.X, p)
        if p % 4 == 1:
            assert plus == minus


@pytest.mark.parametrize("p", [7, 11, 13])
def test_lefschetz_identity(p):
    # 1 + p + p^2 + p^3 - #X = -sum chi(F), with #X from brute force
    n_brute = count_double_cover_bruteforce(CAT.X, p)
    lhs = 1 + p + p * p + p**3 - n_brute
    assert lhs == -octic_char_sum(p, "id", 1)


@pytest.mark.parametrize("p", sorted(SURFACE_TABLE))
def test_surface_count_table(p):
    got = surface_counts_catalog(CAT, p)
    assert got == SURFACE_TABLE[p]


def test_congruence_net():
    # all six rewritings of the same K3 class agree mod p
    for p in good_primes(31):
        counts = surface_counts_catalog(CAT, p)
        residues = {c % p for c in counts.values()}
        assert len(residues) == 1, (p, counts)


def test_weighted_count_cone_divisibility():
    # the affine-cone route must divide cleanly for the quotient model
    for p in (7, 11, 13):
        n = count_weighted_hypersurface(CAT.S1, p)
        assert n == SURFACE_TABLE[p]["S1"]


def test_elliptic_curve_count_example():
    model = EllipticCurveModel("toy", (0, 0, 0, -1, 0))
    assert count_elliptic_curve(model, 5) == 8  # y^2 = x^3 - x over F_5


def test_elliptic_curve_twist():
    # quadratic twist reflects the trace: N_d = p + 1 + a when chi(d) = -1
    model = EllipticCurveModel("toy24", (0, -1, 0, -4, 4))
    for p in (7, 11, 13, 17):
        n = count_elliptic_curve(model, p)
        d = get_context(p).nonsquare
        nt = count_elliptic_curve(model, p, twist=d)
        assert n + nt == 2 * (p + 1)


def test_elliptic_surface_twist_involution():
    for p in (7, 11, 13):
        d = get_context(p).nonsquare
        n = count_elliptic_surface(CAT.S3, p)
        ntt = count_elliptic_surface(CAT.S3, p, twist=d * d % p)
        assert n == ntt


def test_fp2_count_consistency():
    # #S(F_p) enumerated over the quadratic extension context embeds the
    # prime-field count: points fixed by Frobenius are a subset
    n_p = count_p3_hypersurface(CAT.S, 7)
    n_p2 = count_p3_hypersurface(CAT.S, 49)
    assert n_p2 >= n_p
    assert (n_p2 - n_p) % 2 == 0  # Galois orbits of size 2 off the fixed locus


def test_x_count_congruent_to_f120():
    from maschke.newforms import load_newforms

    f120 = load_newforms()["f120"]
    for p in good_primes(31):
        assert (count_double_cover(CAT.X, p) - (1 - f120.ap(p))) % p == 0
