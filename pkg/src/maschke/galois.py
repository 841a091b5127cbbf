"""Comparison machinery for 2-adic Galois representations: square-class
characters and Frobenius classes over the generators (-1, 2, 3, 5), non-cubic
set checking, trace parity gates with a GL2(Z/4) audit, the kernel-uniqueness
translation search, quadratic-character solving, and sign bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import gcd, isqrt

from .gf import legendre

# the sixteen square classes unramified outside {2, 3, 5}
SQUARE_CLASSES = (1, -1, 2, -2, 3, -3, 5, -5, 6, -6, 10, -10, 15, -15, 30, -30)

# prime panel covering all sixteen Frobenius classes; dropping NC_OMIT leaves
# fourteen primes whose class set is non-cubic
NC_PRIMES = (7, 11, 13, 17, 19, 23, 29, 31, 41, 43, 53, 61, 71, 73, 83, 241)
NC_OMIT = (83, 241)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, isqrt(n) + 1))


def chi(d: int, p: int) -> int:
    """Square-class character of d at p, as the Legendre symbol (d/p)."""
    if d not in SQUARE_CLASSES:
        raise ValueError(f"{d} is not one of the 16 square classes")
    if p in (2, 3, 5) or not _is_prime(p):
        raise ValueError(f"character undefined at {p}")
    return 1 if d == 1 else legendre(d % p, p)


def chi_reading(d: int, p: int, convention: str) -> int:
    """The two readings of the subscript: 'A' = (d/p), 'B' = (p/|d|)."""
    if convention == "A":
        return chi(d, p)
    if convention != "B":
        raise ValueError(convention)
    out = 1
    m = abs(d)
    for ell in (3, 5):
        if m % ell == 0:
            out *= legendre(p % ell, ell)
    if m % 2 == 0:
        raise ValueError("reading B undefined for even |d|")
    return out


@dataclass(frozen=True)
class FrobClass:
    p: int
    signs: tuple[int, int, int, int]  # ((-1/p), (2/p), (3/p), (5/p))

    @property
    def bits(self) -> tuple[int, int, int, int]:
        return tuple((1 - s) // 2 for s in self.signs)


def frobenius_class(p: int) -> FrobClass:
    if p in (2, 3, 5) or not _is_prime(p):
        raise ValueError(f"{p} is not a good prime")
    return FrobClass(p, tuple(legendre(d % p, p) for d in (-1, 2, 3, 5)))


def class_coverage(primes) -> dict[tuple, list[int]]:
    out: dict[tuple, list[int]] = {}
    for p in primes:
        out.setdefault(frobenius_class(p).bits, []).append(p)
    return out


# ---- non-cubic sets ------------------------------------------------------


@dataclass
class NoncubicVerdict:
    passed: bool
    include_constant: bool
    witness: str | None = None


def _as_bits(cls) -> tuple[int, ...]:
    if isinstance(cls, FrobClass):
        return cls.bits
    t = tuple(cls)
    if all(v in (0, 1) for v in t):
        return t
    return tuple((1 - v) // 2 for v in t)


def noncubic_check(classes, include_constant: bool = False) -> NoncubicVerdict:
    """Is the class set outside the zero locus of every nonzero polynomial of
    degree <= 3 on F2^4?  Exhaustive scan over the 2^14 span of the degree
    1..3 monomials (2^15 when the constant is included).

    The default excludes the constant monomial, i.e. candidate polynomials
    vanish at 0; the stricter variant trivially fails whenever two or more
    classes are missing (the indicator of any two missed classes is cubic).
    """
    bits = sorted(set(_as_bits(c) for c in classes))
    n = len(bits)
    monos = [tuple(c) for deg in (1, 2, 3) for c in combinations(range(4), deg)]
    # value vector of each monomial over the supplied classes, as a bitmask
    masks = []
    for mono in monos:
        m = 0
        for i, v in enumerate(bits):
            if all(v[j] for j in mono):
                m |= 1 << i
        masks.append(m)
    names = ["*".join(f"e{j+1}" for j in mono) for mono in monos]
    if include_constant:
        masks.append((1 << n) - 1)
        names.append("1")
    for coeffs in range(1, 1 << len(masks)):
        acc = 0
        c = coeffs
        while c:
            low = c & -c
            acc ^= masks[low.bit_length() - 1]
            c ^= low
        if acc == 0:
            terms = [names[i] for i in range(len(masks)) if coeffs >> i & 1]
            return NoncubicVerdict(False, include_constant, " + ".join(terms))
    return NoncubicVerdict(True, include_constant)


# ---- parity gates and the GL2(Z/4) audit ---------------------------------


def _is_even(value) -> bool:
    if isinstance(value, tuple):
        x, y = value[0], value[1]
        return x % 2 == 0 and y % 2 == 0
    return value % 2 == 0


def even_trace_rule(seq: dict) -> bool:
    """Evenness at the panel {7, 11, 13, 19} certifies even traces."""
    for p in (7, 11, 13, 19):
        if p not in seq:
            raise KeyError(f"trace at {p} required for the even-trace rule")
    return all(_is_even(seq[p]) for p in (7, 11, 13, 19))


@dataclass
class Mod4Verdict:
    passed: bool
    violations: list = field(default_factory=list)


def mod4_rule(seq: dict) -> Mod4Verdict:
    """Traces at p = 3 mod 4 are divisible by 4.  Preconditions: the panel
    {7, 11, 19} is 0 mod 4 and the trace at 13 is even."""
    for p in (7, 11, 19):
        if seq[p] % 4 != 0:
            raise ValueError(f"panel precondition fails at {p}: {seq[p]}")
    if seq[13] % 2 != 0:
        raise ValueError(f"trace at 13 must be even: {seq[13]}")
    bad = [(p, a) for p, a in sorted(seq.items()) if p % 4 == 3 and a % 4 != 0]
    return Mod4Verdict(not bad, bad)


@dataclass
class GL2AuditReport:
    total: int
    det3: int
    identity_lifts: int
    order2_lifts: int
    order4_lifts: int
    odd_reduction: int
    pattern_ok: bool
    failures: list = field(default_factory=list)


def _mat_mul(a, b):
    return (
        (
            (a[0][0] * b[0][0] + a[0][1] * b[1][0]) % 4,
            (a[0][0] * b[0][1] + a[0][1] * b[1][1]) % 4,
        ),
        (
            (a[1][0] * b[0][0] + a[1][1] * b[1][0]) % 4,
            (a[1][0] * b[0][1] + a[1][1] * b[1][1]) % 4,
        ),
    )


def gl2z4_trace_audit() -> GL2AuditReport:
    """Enumerate GL2(Z/4) and verify the det = 3 trace pattern: lifts of the
    identity and order-2 elements have trace 0 mod 4, order-4 elements over a
    nontrivial involution have trace 2 mod 4; elements with order-3 mod-2
    reduction have odd trace (excluded by any even-trace hypothesis)."""
    eye = ((1, 0), (0, 1))
    elements = []
    for a, b, c, d in product(range(4), repeat=4):
        if (a * d - b * c) % 4 in (1, 3):
            elements.append(((a, b), (c, d)))
    det3 = [m for m in elements if (m[0][0] * m[1][1] - m[0][1] * m[1][0]) % 4 == 3]
    counts = {"id": 0, "ord2": 0, "ord4": 0, "odd": 0}
    failures = []
    for m in det3:
        red = tuple(tuple(x % 2 for x in row) for row in m)
        tr = (m[0][0] + m[1][1]) % 4
        if red == ((1, 0), (0, 1)):
            counts["id"] += 1
            if tr != 0:
                failures.append(("identity-lift", m, tr))
            continue
        # order of the mod-2 reduction: 2 for involutions, 3 otherwise
        r2 = tuple(
            tuple((red[i][0] * red[0][j] + red[i][1] * red[1][j]) % 2 for j in (0, 1))
            for i in (0, 1)
        )
        if r2 == ((1, 0), (0, 1)):
            # lift of an involution; element order in GL2(Z/4) is 2 or 4
            power, order = m, 1
            while power != eye:
                power, order = _mat_mul(power, m), order + 1
            if order == 2:
                counts["ord2"] += 1
                if tr != 0:
                    failures.append(("order-2", m, tr))
            else:
                counts["ord4"] += 1
                if order != 4 or tr != 2:
                    failures.append(("order-4", m, tr))
        else:
            counts["odd"] += 1
            if tr % 2 == 0:
                failures.append(("odd-reduction", m, tr))
    return GL2AuditReport(
        total=len(elements),
        det3=len(det3),
        identity_lifts=counts["id"],
        order2_lifts=counts["ord2"],
        order4_lifts=counts["ord4"],
        odd_reduction=counts["odd"],
        pattern_ok=not failures,
        failures=failures,
    )


def quartic_frobenius_audit(a: int, p: int) -> int:
    """Order of Frobenius on the splitting field of (x^4 - a)(x^2 + 1) over
    F_p, i.e. the lcm of the irreducible factor degrees."""
    from sympy import GF, Poly, Symbol
    from math import lcm

    x = Symbol("x")
    degs = []
    for poly in (x**4 - a, x**2 + 1):
        _, factors = Poly(poly, x, domain=GF(p)).factor_list()
        degs.extend(f.degree() for f, _ in factors)
    return lcm(*degs)


# ---- trace comparison ----------------------------------------------------


@dataclass
class FslVerdict:
    passed: bool
    primes: tuple
    mismatches: list = field(default_factory=list)
    even_ok: bool = True


def fsl_compare(seq_a: dict, seq_b: dict, primes) -> FslVerdict:
    """Trace-equality comparison over a prime panel.  Callers are responsible
    for the determinant condition and for supplying a non-cubic panel; the
    even-trace certificate is recomputed here when the panel allows it."""
    even_ok = True
    try:
        even_ok = even_trace_rule(seq_a) and even_trace_rule(seq_b)
    except KeyError:
        pass  # panel without {7,11,13,19}: caller certifies separately
    mismatches = [
        (p, seq_a[p], seq_b[p]) for p in primes if seq_a[p] != seq_b[p]
    ]
    return FslVerdict(not mismatches and even_ok, tuple(primes), mismatches, even_ok)


@dataclass
class CharacterSolution:
    status: str  # unique | underdetermined | inconsistent
    candidates: tuple

    @property
    def d(self) -> int:
        if self.status != "unique":
            raise ValueError(f"character is {self.status}")
        return self.candidates[0]


def _sign(s) -> int:
    if s in (1, -1):
        return s
    return {"+": 1, "-": -1}[s]


def solve_quadratic_character(constraints) -> CharacterSolution:
    """Unique square class d with chi_d(p) = sign for all (p, sign) pairs."""
    cands = [
        d
        for d in SQUARE_CLASSES
        if all(chi(d, p) == _sign(s) for p, s in constraints)
    ]
    if not cands:
        return CharacterSolution("inconsistent", ())
    if len(cands) > 1:
        return CharacterSolution("underdetermined", tuple(cands))
    return CharacterSolution("unique", tuple(cands))


def phi_constraints(forms, primes=(11, 13, 17, 19)) -> list[tuple[int, int]]:
    """Sign data for the twist character phi relating the two symmetric-square
    blocks of the surface decomposition.  The trace ratio is observable only
    where the level-1200 coefficient is nonzero."""
    rec = forms["f1200"]
    out = []
    for p in primes:
        x, y, _ = rec.ap_parts(p)
        if x == 0 and y == 0:
            continue
        out.append((p, chi(15, p) * chi(-15, p)))
    return out


@dataclass
class CalibrationReport:
    consistent: dict  # convention -> bool
    failures: dict  # convention -> list of (check, p, expected, observed)
    adopted: str | None

    def winning(self) -> str:
        ok = [c for c, good in self.consistent.items() if good]
        if len(ok) != 1:
            raise ValueError(f"calibration not decisive: {ok}")
        return ok[0]


def calibrate_character_convention(
    forms, s_counts: dict[int, int], s1_counts: dict[int, int]
) -> CalibrationReport:
    """Fit the subscript-reading convention for chi_15 / chi_-15 against the
    octic surface and quotient-surface point counts.

    Reading A evaluates chi_d as (d/p), reading B as (p/|d|).  The two agree
    at p = 1 mod 4 and differ at p = 3 mod 4, where the counts decide.  The
    chi_3 reading is invisible here: it enters the symmetric square as
    -eps(p) p, which vanishes mod p.
    """
    f1200, f15 = forms["f1200"], forms["f15"]
    failures = {"A": [], "B": []}
    for conv in ("A", "B"):
        for p in sorted(s_counts):
            s2 = f1200.ap_square(p)
            w = 18 * chi_reading(-15, p, conv) + 12 * chi_reading(15, p, conv)
            pred = (1 + 5 * f15.ap(p) + w * (s2 - chi(-3, p) * p)) % p
            if pred != s_counts[p] % p:
                failures[conv].append(("S", p, s_counts[p] % p, pred))
        for p in sorted(s1_counts):
            s2 = f1200.ap_square(p)
            pred = (1 + chi_reading(15, p, conv) * (s2 - chi(-3, p) * p)) % p
            if pred != s1_counts[p] % p:
                failures[conv].append(("S1", p, s1_counts[p] % p, pred))
    consistent = {c: not f for c, f in failures.items()}
    adopted = "A" if consistent["A"] and not consistent["B"] else None
    return CalibrationReport(consistent, failures, adopted)


# ---- kernel uniqueness search (translation vectors) ----------------------


def galois_trace_matrix(u1: int, u2: int, u3: int, u4: int):
    return [
        [u1, 9 - u1, 9, 9],
        [u2, 9 - u2, 9, 9],
        [u3, 1 - u3, 1, -3],
        [u4, -1 - u4, 5, 1],
    ]


def _det4(m) -> int:
    def det3(a):
        return (
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        )

    total = 0
    for j in range(4):
        minor = [[m[r][c] for c in range(4) if c != j] for r in range(1, 4)]
        total += (-1) ** j * m[0][j] * det3(minor)
    return total


_ODD_SMALL = tuple(u for u in range(-7, 8, 2))
_ODD_WIDE = tuple(u for u in range(-15, 16, 2))


def det_formula_audit() -> bool:
    """det M = 216 (u1 - u2) over the full odd parameter grid."""
    for u1 in _ODD_SMALL:
        for u2 in _ODD_SMALL:
            for u3 in _ODD_WIDE:
                for u4 in _ODD_WIDE:
                    if _det4(galois_trace_matrix(u1, u2, u3, u4)) != 216 * (u1 - u2):
                        return False
    return True


def _kernel_vector(rows) -> tuple[int, int, int, int] | None:
    """Primitive integer kernel vector of a rank-3 3x4 integer matrix, via
    signed maximal minors; None if the rank is below 3."""
    k = []
    for j in range(4):
        cols = [c for c in range(4) if c != j]
        a = [[rows[r][c] for c in cols] for r in range(3)]
        d = (
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        )
        k.append(d if j % 2 == 0 else -d)
    if all(x == 0 for x in k):
        return None
    g = gcd(gcd(k[0], k[1]), gcd(k[2], k[3]))
    return tuple(x // g for x in k)


@dataclass
class UniquenessReport:
    p: int
    v0: tuple
    bound: int
    survivors: list
    eliminated: dict
    unique: bool
    matrices: int
    degenerate: int


def galois_trace_uniqueness(p: int, v0: tuple) -> UniquenessReport:
    """Search for translation vectors that could shift the trace solution v0.

    For every admissible matrix M (rows 1 and 2 share the odd parameter u,
    |u| < 9; rows 3 and 4 carry independent odd parameters in [-15, 15]) the
    kernel is one-dimensional; its minimal multiple with entries in 4Z is a
    candidate translation.  Candidates above the global bound floor(4 sqrt p)
    are discarded; each survivor v is eliminated when both v0 + v and v0 - v
    break the per-entry Weil bound 2 sqrt p.
    """
    bound = isqrt(16 * p)
    weil_sq = 4 * p
    if any(x * x > weil_sq for x in v0):
        raise ValueError(f"base solution {v0} violates the Weil bound at {p}")
    survivors: set[tuple] = set()
    matrices = degenerate = 0
    for u in _ODD_SMALL:
        for u3 in _ODD_WIDE:
            for u4 in _ODD_WIDE:
                matrices += 1
                rows = galois_trace_matrix(u, u, u3, u4)[1:]
                k = _kernel_vector(rows)
                if k is None:
                    degenerate += 1
                    continue
                mult = 1
                for x in k:
                    need = 4 // gcd(4, x % 4 if x % 4 else 4)
                    mult = mult * need // gcd(mult, need)
                v = tuple(mult * x for x in k)
                if v[0] < 0 or (v[0] == 0 and next((s for s in v if s), 1) < 0):
                    v = tuple(-x for x in v)
                if max(abs(x) for x in v) <= bound:
                    survivors.add(v)
    eliminated = {}
    for v in sorted(survivors):
        plus_bad = any((a + b) ** 2 > weil_sq for a, b in zip(v0, v))
        minus_bad = any((a - b) ** 2 > weil_sq for a, b in zip(v0, v))
        eliminated[v] = plus_bad and minus_bad
    return UniquenessReport(
        p=p,
        v0=tuple(v0),
        bound=bound,
        survivors=sorted(survivors),
        eliminated=eliminated,
        unique=all(eliminated.values()),
        matrices=matrices,
        degenerate=degenerate,
    )


# ---- sign arguments ------------------------------------------------------


@dataclass
class SignContradictionReport:
    max_trace: int
    target: int
    achievable: bool


def sign_contradiction_check(
    dim_split: tuple[int, int], eigenvalue_counts: tuple[int, int], target: int
) -> SignContradictionReport:
    """Maximal Galois trace (d'-part sum minus d''-part sum) over all ways of
    distributing n+ eigenvalues +1 and n- eigenvalues -1 into parts of sizes
    d', d''; reports whether the target is attained by any distribution."""
    d1, d2 = dim_split
    npl, nmi = eigenvalue_counts
    if d1 < 0 or d2 < 0 or npl < 0 or nmi < 0 or d1 + d2 != npl + nmi:
        raise ValueError("infeasible dimensions")
    k_hi = min(d1, npl)  # k = number of +1 eigenvalues placed in the d'-part
    k_lo = max(0, d1 - nmi)
    trace = lambda k: 4 * k - 2 * d1 - npl + nmi
    achievable = (
        (target + 2 * d1 + npl - nmi) % 4 == 0
        and k_lo <= (target + 2 * d1 + npl - nmi) // 4 <= k_hi
    )
    return SignContradictionReport(trace(k_hi), target, achievable)


@dataclass
class DuplicationVerdict:
    passed: bool
    duplicates: list


def duplication_check(seqs: dict[str, dict], primes=(13, 29)) -> DuplicationVerdict:
    """Flags any pair of trace sequences agreeing at every panel prime."""
    dup = []
    labels = sorted(seqs)
    for a, b in combinations(labels, 2):
        if all(seqs[a][p] == seqs[b][p] for p in primes):
            dup.append((a, b))
    return DuplicationVerdict(not dup, dup)
