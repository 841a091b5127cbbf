"""Newform coefficient tables and motivic trace assembly.

Data files live in ``data/newforms``.  Schema: comment lines start with
``#``; the first data line is ``label weight level nebentypus radicand``
(nebentypus given as a quadratic discriminant, 1 = trivial); every further
line is ``p x y [m]`` encoding a_p = x + y*sqrt(m), where m defaults to the
header radicand (radicand 0 in the header means per-line radicands).  x and
y are integers or exact rationals written num/den.

Traces of Frobenius on the motives are assembled from these tables via
decomposition specs: lists of (multiplicity, form, Tate twist, character,
op) pieces, where op is "id" (2-dimensional piece) or "sym2"
(3-dimensional symmetric square piece).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from math import isqrt

from .gf import legendre
from .models import EllipticCurveModel

# rational curves whose L-series carry the three weight-2 tables; counting
# points on these gives the coefficients without consulting the tables
WEIGHT2_CURVES = {
    "f15C": EllipticCurveModel("15a", (1, 1, 1, -10, -10)),
    "f24B": EllipticCurveModel("24a", (0, -1, 0, -4, 4)),
    "f120E": EllipticCurveModel("120b", (0, 1, 0, -15, 18)),
}

_PRIMES_CACHE: set[int] = set()


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n in _PRIMES_CACHE:
        return True
    if any(n % d == 0 for d in range(2, isqrt(n) + 1)):
        return False
    _PRIMES_CACHE.add(n)
    return True


def character_value(disc: int, p: int) -> int:
    """Quadratic character of discriminant ``disc`` at an odd prime not
    dividing disc, read as the Legendre symbol (disc / p)."""
    if disc == 1:
        return 1
    if p == 2 or disc % p == 0:
        raise ValueError(f"character of disc {disc} undefined at {p}")
    return legendre(disc % p, p)


@dataclass(frozen=True)
class NewformRecord:
    label: str
    weight: int
    level: int
    nebentypus: int  # quadratic discriminant, 1 = trivial
    radicand: int  # 0 = per-line radicands
    coeffs: dict  # p -> (x, y, m)

    def primes(self) -> list[int]:
        return sorted(self.coeffs)

    def eps(self, p: int) -> int:
        return character_value(self.nebentypus, p)

    def ap_parts(self, p: int) -> tuple[int, int, int]:
        return self.coeffs[p]

    def ap(self, p: int) -> int:
        """Rational a_p; raises for irrational entries."""
        x, y, m = self.coeffs[p]
        if y != 0 and m != 1:
            raise ValueError(f"{self.label}: a_{p} = {x} + {y}*sqrt({m}) is irrational")
        return x + y

    def ap_square(self, p: int) -> int:
        """a_p^2, defined whenever the cross term vanishes."""
        x, y, m = self.coeffs[p]
        if x * y != 0 and m != 1:
            raise ValueError(f"{self.label}: a_{p}^2 irrational")
        if m == 1:
            return (x + y) ** 2
        return x * x + m * y * y

    def trace_fp2(self, p: int) -> int:
        """Trace of Frobenius at p^2: a_p^2 - 2 eps(p) p^(k-1)."""
        return self.ap_square(p) - 2 * self.eps(p) * p ** (self.weight - 1)


def trace_sym2(rec: NewformRecord, p: int, eps: int | None = None) -> int:
    """Trace of Frobenius on Sym^2 of the p-piece: a_p^2 - eps(p) p^(k-1).

    eps overrides the tabulated nebentypus value; the two readings of the
    subscript differ by (-1/p), so residues mod p do not depend on it."""
    e = rec.eps(p) if eps is None else eps
    return rec.ap_square(p) - e * p ** (rec.weight - 1)


def _weil_square_bound_ok(x: int, y: int, m: int, bound: int) -> bool:
    # largest |embedding|^2 of x + y sqrt(m) must be <= bound
    if m < 0 or y == 0:
        return x * x + abs(m) * y * y <= bound
    if m == 1:
        return (x + y) ** 2 <= bound
    base = x * x + m * y * y
    if base > bound:
        return False
    # remaining condition: 2|xy|sqrt(m) <= bound - base
    return 4 * x * x * y * y * m <= (bound - base) ** 2


def _coeff(token: str):
    """Coefficient entry: an integer, or an exact rational written num/den."""
    f = Fraction(token)
    return int(f) if f.denominator == 1 else f


def _parse_file(text: str, filename: str) -> NewformRecord:
    header = None
    coeffs = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 5:
                raise ValueError(f"{filename}: bad header {line!r}")
            label = parts[0]
            weight, level, nebentypus, radicand = map(int, parts[1:])
            header = (label, weight, level, nebentypus, radicand)
            continue
        if len(parts) not in (3, 4):
            raise ValueError(f"{filename}: bad coefficient line {line!r}")
        p, x, y = int(parts[0]), _coeff(parts[1]), _coeff(parts[2])
        m = int(parts[3]) if len(parts) == 4 else header[4]
        if y != 0 and m == 0:
            raise ValueError(f"{filename}: missing radicand at p={p}")
        if y == 0:
            m = 1
        label, weight, level, nebentypus, radicand = header
        if not _is_prime(p) or p == 2 or level % p == 0:
            raise ValueError(f"{filename}: prime {p} is not an odd good prime")
        if p in coeffs:
            raise ValueError(f"{filename}: duplicate prime {p}")
        if not _weil_square_bound_ok(x, y, m, 4 * p ** (weight - 1)):
            raise ValueError(f"{filename}: a_{p} violates the Weil bound")
        coeffs[p] = (x, y, m)
    if header is None:
        raise ValueError(f"{filename}: empty file")
    label, weight, level, nebentypus, radicand = header
    return NewformRecord(label, weight, level, nebentypus, radicand, coeffs)


def load_newforms(directory=None) -> dict[str, NewformRecord]:
    """Load every table in the data directory, keyed by label."""
    out = {}
    if directory is None:
        root = resources.files("maschke").joinpath("data/newforms")
        entries = [(f.name, f.read_text()) for f in root.iterdir() if f.name.endswith(".txt")]
    else:
        from pathlib import Path

        entries = [(f.name, f.read_text()) for f in sorted(Path(directory).glob("*.txt"))]
    for name, text in sorted(entries):
        rec = _parse_file(text, name)
        if rec.label in out:
            raise ValueError(f"duplicate label {rec.label}")
        out[rec.label] = rec
    return out


# ---- decomposition specs -------------------------------------------------


@dataclass(frozen=True)
class Piece:
    mult: int
    form: str
    tate: int
    character: int = 1  # quadratic discriminant, 1 = trivial
    op: str = "id"  # "id" | "sym2"

    @property
    def dim(self) -> int:
        return self.mult * (3 if self.op == "sym2" else 2)


@dataclass(frozen=True)
class DecompositionSpec:
    name: str
    hodge: tuple[int, ...]
    pieces: tuple[Piece, ...]

    @property
    def dim(self) -> int:
        return sum(piece.dim for piece in self.pieces)


def decomposition_specs() -> dict[str, DecompositionSpec]:
    """Middle-cohomology decompositions of the three varieties."""
    thm_x = DecompositionSpec(
        "thm-x",
        (1, 14, 14, 1),
        (
            Piece(1, "f120", 0),
            Piece(32, "f120E", 1),
            Piece(18, "f120E", 1, -1),
            Piece(36, "f24B", 1),
            Piece(18, "f24B", 1, -1),
            Piece(27, "f15C", 1),
            Piece(18, "f15C", 1, -1),
        ),
    )
    thm_y = DecompositionSpec(
        "thm-y",
        (1, 14, 14, 1),
        (
            Piece(1, "f120", 0),
            Piece(5, "f120E", 1),
            Piece(9, "f24B", 1),
        ),
    )
    thm_s = DecompositionSpec(
        "thm-s",
        (1, 44, 1),
        (
            Piece(5, "f15", 0),
            Piece(18, "f1200", 0, -15, "sym2"),
            Piece(12, "f1200", 0, 15, "sym2"),
        ),
    )
    return {s.name: s for s in (thm_x, thm_y, thm_s)}


def dimension_audit(specs=None) -> dict[str, int]:
    specs = specs or decomposition_specs()
    return {name: spec.dim for name, spec in specs.items()}


def assemble_trace(
    spec: DecompositionSpec,
    forms: dict[str, NewformRecord],
    p: int,
    sym2_eps: int | None = None,
) -> int:
    """Predicted trace of Frob_p on the middle cohomology."""
    total = 0
    for piece in spec.pieces:
        rec = forms[piece.form]
        chi = character_value(piece.character, p)
        if piece.op == "sym2":
            val = trace_sym2(rec, p, eps=sym2_eps)
        else:
            val = rec.ap(p)
        total += piece.mult * chi * p**piece.tate * val
    return total


def assemble_trace_fp2(spec: DecompositionSpec, forms: dict[str, NewformRecord], p: int) -> int:
    """Predicted trace of Frob_{p^2}; quadratic characters square away."""
    total = 0
    for piece in spec.pieces:
        rec = forms[piece.form]
        if piece.op == "sym2":
            # Sym^2 eigenvalues at p^2 sum to (a^2+b^2)^2 - (ab)^2
            t2 = rec.trace_fp2(p)
            val = t2 * t2 - (p ** (rec.weight - 1)) ** 2
        else:
            val = rec.trace_fp2(p)
        total += piece.mult * p ** (2 * piece.tate) * val
    return total


def spec_trace_mod_p(
    spec: DecompositionSpec, forms: dict[str, NewformRecord], p: int
) -> int:
    """assemble_trace reduced mod p; Tate-twisted pieces vanish."""
    return assemble_trace(spec, forms, p) % p


def derive_f120(counts_by_prime: dict[int, dict[str, int]], forms) -> dict[int, int]:
    """Re-derive the weight-4 coefficient from octic double-cover counts.

    counts_by_prime maps a prime p = 1 mod 4 to the four composed counts
    {id, i1, i2, i3}; the trace extraction must reproduce the ingested f120
    table exactly (and, as a side effect, the three weight-2 tables).
    """
    from .lefschetz import extract_x_traces

    table = forms["f120"]
    wt2 = {"f120E": forms["f120E"], "f24B": forms["f24B"], "f15C": forms["f15C"]}
    out: dict[int, int] = {}
    mismatches = []
    for p in sorted(counts_by_prime):
        if p in (2, 3, 5) or not _is_prime(p):
            raise ValueError(f"{p} is not a good prime")
        tr = extract_x_traces(counts_by_prime[p], p)
        out[p] = tr.a120
        if table.ap(p) != tr.a120:
            mismatches.append((p, "f120", table.ap(p), tr.a120))
        for label, got in [
            ("f120E", tr.a120E),
            ("f24B", tr.a24B),
            ("f15C", tr.a15C),
        ]:
            if wt2[label].ap(p) != got:
                mismatches.append((p, label, wt2[label].ap(p), got))
    if mismatches:
        raise ArithmeticError(f"derived coefficients disagree with tables: {mismatches}")
    return out
