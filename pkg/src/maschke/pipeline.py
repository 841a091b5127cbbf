"""Verification pipeline: configuration, the point-count cache, and a runner
per numbered check.

Configuration comes from one INI file (section ``[pipeline]``) plus explicit
overrides; the only environment variable honoured is MASCHKE_CACHE_DIR.  The
cache is an append-only text file of checksummed count records; anything that
fails its checksum or carries a stale version is recounted.
"""

from __future__ import annotations

import configparser
import hashlib
import os
import time
import warnings
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from . import counting, galois, k3, lefschetz, newforms
from .models import maschke_catalog
from .report import CriterionResult, VerificationReport

# ---- configuration ---------------------------------------------------------

_CONFIG_KEYS = ("prime_bound", "benchmark", "cache_dir", "output_dir", "workers")


@dataclass(frozen=True)
class PipelineConfig:
    prime_bound: int = 73
    benchmark: bool = False
    cache_dir: str | None = None
    output_dir: str = "reports"
    workers: int = 1

    def __post_init__(self):
        if self.prime_bound < 13:
            raise ValueError("prime_bound must be at least 13")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")

    @classmethod
    def load(cls, path: str | None = None, **overrides) -> "PipelineConfig":
        """Defaults, then the config file, then explicit overrides (None means
        not given).  cache_dir falls back to MASCHKE_CACHE_DIR last."""
        values: dict = {}
        if path is not None:
            parser = configparser.ConfigParser()
            if not parser.read(path):
                raise FileNotFoundError(path)
            if not parser.has_section("pipeline"):
                raise ValueError(f"{path}: missing [pipeline] section")
            section = parser["pipeline"]
            unknown = set(section) - set(_CONFIG_KEYS)
            if unknown:
                raise ValueError(f"{path}: unknown keys {sorted(unknown)}")
            for key in ("prime_bound", "workers"):
                if key in section:
                    values[key] = section.getint(key)
            if "benchmark" in section:
                values["benchmark"] = section.getboolean("benchmark")
            for key in ("cache_dir", "output_dir"):
                if key in section:
                    values[key] = section[key]
        for key, val in overrides.items():
            if key not in _CONFIG_KEYS:
                raise TypeError(f"unknown option {key!r}")
            if val is not None:
                values[key] = val
        if values.get("cache_dir") is None and os.environ.get("MASCHKE_CACHE_DIR"):
            values["cache_dir"] = os.environ["MASCHKE_CACHE_DIR"]
        return cls(**values)

    def cache(self) -> "CountCache | None":
        return CountCache(self.cache_dir) if self.cache_dir else None


# ---- count cache -----------------------------------------------------------

CACHE_VERSION = 1


def _checksum(body: str) -> str:
    return hashlib.sha256(body.encode()).hexdigest()[:12]


@dataclass(frozen=True)
class CacheRecord:
    model: str  # model fingerprint
    q: int
    twist: str
    count: int
    version: int = CACHE_VERSION

    def key(self) -> tuple[str, int, str]:
        return (self.model, self.q, self.twist)

    def line(self) -> str:
        body = f"{self.version}\t{self.model}\t{self.q}\t{self.twist}\t{self.count}"
        return f"{body}\t{_checksum(body)}\n"


def parse_cache_line(raw: str) -> CacheRecord | None:
    """Record from one cache line; None when the line is corrupt."""
    parts = raw.rstrip("\n").split("\t")
    if len(parts) != 6:
        return None
    try:
        version, q, count = int(parts[0]), int(parts[2]), int(parts[4])
    except ValueError:
        return None
    body = "\t".join(parts[:5])
    if _checksum(body) != parts[5]:
        return None
    return CacheRecord(parts[1], q, parts[3], count, version)


class CountCache:
    """Append-only point-count cache, one checksummed record per line.

    Corrupt lines are skipped with a warning; checksum failures and records
    from another CACHE_VERSION are ignored, which forces a recount.  Later
    records win, so appending is also how a record is superseded.
    """

    FILENAME = "counts.tsv"

    def __init__(self, directory):
        self.directory = Path(directory)
        self.path = self.directory / self.FILENAME
        self._mem: dict[tuple[str, int, str], int] = {}
        self._loaded = False

    def _load(self) -> None:
        if self._loaded:
            return
        self._loaded = True
        if not self.path.exists():
            return
        for lineno, raw in enumerate(self.path.read_text().splitlines(), 1):
            if not raw.strip():
                continue
            rec = parse_cache_line(raw)
            if rec is None:
                warnings.warn(f"{self.path}:{lineno}: skipping corrupt cache line")
                continue
            if rec.version != CACHE_VERSION:
                continue
            self._mem[rec.key()] = rec.count

    def get(self, model: str, q: int, twist: str = "id") -> int | None:
        self._load()
        return self._mem.get((model, q, twist))

    def put(self, model: str, q: int, twist: str, count: int) -> None:
        self._load()
        rec = CacheRecord(model, q, twist, count)
        self.directory.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="ascii") as fh:
            fh.write(rec.line())
        self._mem[rec.key()] = count


def model_fingerprint(model) -> str:
    """Stable content hash of a model's defining data."""
    return hashlib.sha256(repr(model).encode()).hexdigest()[:12]


@lru_cache(maxsize=1)
def _catalog():
    return maschke_catalog()


@lru_cache(maxsize=1)
def _forms():
    return newforms.load_newforms()


def _variants(q: int) -> tuple[str, ...]:
    return ("id", "i1", "i2", "i3") if q % 4 == 1 else ("id", "i1", "i2")


def composed_counts(q: int, cache: CountCache | None = None) -> dict[str, int]:
    """Cached composed involution counts of X over F_q."""
    fp = model_fingerprint(_catalog()["X"])
    if cache is not None:
        got = {v: cache.get(fp, q, v) for v in _variants(q)}
        if all(c is not None for c in got.values()):
            return got
    counts = counting.composed_point_counts(q)
    if cache is not None:
        for v, c in counts.items():
            cache.put(fp, q, v, c)
    return counts


def octic_count(q: int, cache: CountCache | None = None) -> int:
    model = _catalog()["S"]
    fp = model_fingerprint(model)
    if cache is not None:
        hit = cache.get(fp, q)
        if hit is not None:
            return hit
    n = counting.count_p3_hypersurface(model, q)
    if cache is not None:
        cache.put(fp, q, "id", n)
    return n


def surface_count(name: str, p: int, cache: CountCache | None = None) -> int:
    model = _catalog()[name]
    fp = model_fingerprint(model)
    if cache is not None:
        hit = cache.get(fp, p)
        if hit is not None:
            return hit
    if name == "S1":
        n = counting.count_weighted_hypersurface(model, p)
    else:
        n = counting.count_elliptic_surface(model, p)
    if cache is not None:
        cache.put(fp, p, "id", n)
    return n


def _pmap(fn, items, workers: int):
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))


def _composed_counts_panel(
    primes, cfg: PipelineConfig, cache: CountCache | None
) -> dict[int, dict[str, int]]:
    """Composed counts at several primes, parallel over the cache misses."""
    out = {}
    missing = []
    for p in primes:
        if cache is not None:
            fp = model_fingerprint(_catalog()["X"])
            got = {v: cache.get(fp, p, v) for v in _variants(p)}
            if all(c is not None for c in got.values()):
                out[p] = got
                continue
        missing.append(p)
    for p, counts in zip(missing, _pmap(counting.composed_point_counts, missing, cfg.workers)):
        if cache is not None:
            fp = model_fingerprint(_catalog()["X"])
            for v, c in counts.items():
                cache.put(fp, p, v, c)
        out[p] = counts
    return out


# ---- criterion runners ------------------------------------------------------
#
# Each runner returns (ok, expected, observed) with ok True/False/None; None
# marks a skipped check.  Strings must be deterministic for a fixed
# configuration: the machine report of a warm rerun is compared byte for byte.

_Y_CASES = (
    ((400, 130390, 7), (0, 0, 0)),
    ((1284, 1799134, 11), (4, -4, 4)),
    ((2170, 4882030, 13), (54, 6, -2)),
)

_Y_INVOLUTIONS = {
    "iota1": ({11: 180, 13: -102}, (1, -1, 3)),
    "iota2": ({11: -4, 13: -210}, (-1, -3, -3)),
}


def _c01(cfg, cache):
    got = []
    ok = True
    for (n1, n2, p), want in _Y_CASES:
        sol = lefschetz.solve_y_system(n1, n2, p)
        unique = sol.status == "unique"
        ok = ok and unique and sol.candidates == [want]
        got.append(f"p={p}: {sol.status} {sol.candidates}")
    expected = "unique triples " + ", ".join(str(w) for _, w in _Y_CASES)
    return ok, expected, "; ".join(got)


def _c02(cfg, cache):
    known = {}
    for (n1, n2, p), _ in _Y_CASES[1:]:
        known[p] = lefschetz.solve_y_system(n1, n2, p).triple
    got = []
    ok = True
    for name, (composed, want) in _Y_INVOLUTIONS.items():
        sol = lefschetz.solve_involution_traces(composed, known)
        brute = lefschetz.enumerate_involution_signs(composed, known)
        ok = ok and sol.status == "unique" and sol.signs == want and brute == [want]
        got.append(f"{name}: {sol.status} {sol.signs}, enumeration {brute}")
    expected = "unique signatures (1, -1, 3) and (-1, -3, -3), both routes"
    return ok, expected, "; ".join(got)


def _x_panel(cfg) -> list[int]:
    return [p for p in (13, 17, 29, 37, 41, 53, 61, 73) if p <= cfg.prime_bound]


def _c03(cfg, cache):
    forms = _forms()
    panel = _x_panel(cfg)
    counts = _composed_counts_panel(panel, cfg, cache)
    bad = []
    for p in panel:
        tr = lefschetz.extract_x_traces(counts[p], p)
        want = tuple(forms[l].ap(p) for l in ("f120", "f120E", "f24B", "f15C"))
        if tr.as_tuple() != want:
            bad.append((p, tr.as_tuple(), want))
    first13 = lefschetz.extract_x_traces(counts[13], 13).as_tuple()[:3]
    ok = not bad and first13 == (54, 6, -2)
    expected = (
        f"four enumerations at each of {len(panel)} split primes reproduce the "
        f"ingested tables; p=13 triple (54, 6, -2)"
    )
    observed = f"p=13 triple {first13}; " + (
        "all tables reproduced" if not bad else f"mismatches {bad}"
    )
    return ok, expected, observed


def _fp2_check(p: int, cache) -> tuple[bool, str]:
    forms = _forms()
    counts = composed_counts(p * p, cache)
    w2 = {l: forms[l].ap(p) for l in ("f120E", "f24B", "f15C")}
    ext = lefschetz.extract_x_traces_fp2(counts, p, w2, a120=forms["f120"].ap(p))
    good = ext.all_checks_pass() and ext.w30 == ext.w15
    detail = (
        f"p={p}: W=({ext.w15}, {ext.w30}, {ext.w45}, {ext.w45p}), "
        f"checks {sum(ext.checks.values())}/{len(ext.checks)}"
    )
    return good, detail


def _c04(cfg, cache):
    parts = []
    ok = True
    for p in (11, 19):
        good, detail = _fp2_check(p, cache)
        ok = ok and good
        parts.append(detail)
    expected = "tr Frob_{p^2}(W) = p^2 (a_p^2 - 2p) on all four blocks at p = 11 and 19"
    return ok, expected, "; ".join(parts)


_S_RESIDUES = {7: 1, 11: 0, 13: 9}


def _c05(cfg, cache):
    forms = _forms()
    specs = newforms.decomposition_specs()
    f120 = forms["f120"]
    x_bad = []
    xs = [p for p in counting.good_primes(min(cfg.prime_bound, 73)) if p in f120.primes()]
    for p in xs:
        if composed_counts(p, cache)["id"] % p != (1 - f120.ap(p)) % p:
            x_bad.append(p)
    s_got = {}
    s_ok = True
    for p in sorted(_S_RESIDUES):
        n_s = octic_count(p, cache)
        t1 = newforms.assemble_trace(specs["thm-s"], forms, p)
        t2 = newforms.assemble_trace(
            specs["thm-s"], forms, p, sym2_eps=newforms.character_value(3, p)
        )
        res = n_s % p
        s_got[p] = res
        s_ok = s_ok and res == (1 + t1) % p == (1 + t2) % p == _S_RESIDUES[p]
    ok = not x_bad and s_ok
    expected = (
        f"#X = 1 - a_p mod p at {len(xs)} good primes; octic residues "
        f"{_S_RESIDUES} under both nebentypus readings"
    )
    observed = (
        ("X congruences hold" if not x_bad else f"X congruence fails at {x_bad}")
        + f"; octic residues {s_got}"
    )
    return ok, expected, observed


_QUARTIC_RADICANDS = (2, -2, 3, -3, 5, -5, 6, -6, 10, -10, 15, -15, 30, -30)


def _c06(cfg, cache):
    rep = galois.gl2z4_trace_audit()
    shape = (
        rep.total,
        rep.det3,
        rep.identity_lifts,
        rep.order2_lifts,
        rep.order4_lifts,
        rep.odd_reduction,
    )
    bad = []
    primes = [3] + counting.good_primes(199, residue=3, modulus=4)
    for a in _QUARTIC_RADICANDS:
        for p in primes:
            if galois.quartic_frobenius_audit(a, p) != 2:
                bad.append((a, p))
    ok = shape == (96, 48, 8, 12, 12, 16) and rep.pattern_ok and not bad
    expected = (
        "group 96, det-3 coset 48 = 8 identity lifts + 12 order-2 + 12 order-4 "
        "+ 16 odd; x^4 - a splits over F_{p^2} for 14 radicands, p = 3 mod 4 below 200"
    )
    observed = f"shape {shape}, pattern_ok {rep.pattern_ok}; " + (
        "all quartics order 2" if not bad else f"quartic failures {bad}"
    )
    return ok, expected, observed


def _c07(cfg, cache):
    forms = _forms()
    panel = [p for p in galois.NC_PRIMES if p not in galois.NC_OMIT]
    cov = galois.class_coverage(galois.NC_PRIMES)
    cov_ok = len(cov) == 16 and all(len(v) == 1 for v in cov.values())
    nc = galois.noncubic_check([galois.frobenius_class(p) for p in panel])
    counts = _composed_counts_panel(panel, cfg, cache)
    geo: dict[str, dict[int, int]] = {l: {} for l in ("f120", "f120E", "f24B", "f15C")}
    cross_bad = []
    for p in panel:
        live = {l: counting.ap_elliptic(c, p) for l, c in newforms.WEIGHT2_CURVES.items()}
        if p % 4 == 1:
            tr = lefschetz.extract_x_traces(counts[p], p)
            geo["f120"][p] = tr.a120
            if (tr.a120E, tr.a24B, tr.a15C) != tuple(
                live[l] for l in ("f120E", "f24B", "f15C")
            ):
                cross_bad.append(p)
        else:
            geo["f120"][p] = lefschetz.a120_from_counts_3mod4(
                counts[p], p, tuple(live[l] for l in ("f120E", "f24B", "f15C"))
            )
        for l in ("f120E", "f24B", "f15C"):
            geo[l][p] = live[l]
    verdicts = {
        l: galois.fsl_compare(geo[l], {p: forms[l].ap(p) for p in panel}, panel)
        for l in sorted(geo)
    }
    fsl_ok = all(v.passed for v in verdicts.values())
    ok = cov_ok and nc.passed and not cross_bad and fsl_ok
    expected = (
        "16 primes cover the 16 Frobenius classes bijectively; the 14-prime "
        "panel is non-cubic; geometric traces equal the tables for all four forms"
    )
    mism = {l: v.mismatches for l, v in verdicts.items() if v.mismatches}
    observed = (
        f"coverage {'bijective' if cov_ok else 'defective'}; "
        f"non-cubic {nc.passed}; "
        + ("traces match" if fsl_ok and not cross_bad else f"cross {cross_bad} mismatches {mism}")
    )
    return ok, expected, observed


def _c08(cfg, cache):
    r71 = galois.galois_trace_uniqueness(71, (-8, -8, 8, 8))
    r43 = galois.galois_trace_uniqueness(43, (4, 4, 4, 12))
    det_ok = galois.det_formula_audit()
    ok = (
        r71.bound == 33
        and len(r71.survivors) == 9
        and r71.unique
        and r43.unique
        and det_ok
    )
    expected = (
        "9 translation candidates at p=71 (bound 33), all eliminated; "
        "unique at p=43; det M = 216 (u1 - u2) on the full grid"
    )
    observed = (
        f"p=71: {len(r71.survivors)} candidates, bound {r71.bound}, unique {r71.unique}; "
        f"p=43: {len(r43.survivors)} candidates, unique {r43.unique}; det audit {det_ok}"
    )
    return ok, expected, observed


def _c09(cfg, cache):
    rep = galois.sign_contradiction_check((12, 3), (7, 8), 9)
    ok = rep.max_trace == 5 and not rep.achievable
    expected = "maximal sign-distribution trace 5 < target 9"
    observed = f"max trace {rep.max_trace}, target 9 achievable {rep.achievable}"
    return ok, expected, observed


_K3_MODELS = ("S2", "S3", "S4", "S4-aux", "S5")


def _c10(cfg, cache):
    import sympy as sp

    cat = _catalog()
    eulers = {}
    for name in _K3_MODELS:
        eulers[name] = k3.euler_sum(k3.kodaira_classify(cat[name]))
    euler_ok = all(e == 24 for e in eulers.values())
    iso = k3.two_isogeny(cat["S3"])
    scaled = k3.weierstrass_scale(cat["S4"], 4)
    iso_ok = sp.expand(iso.a - scaled.a) == 0 and sp.expand(iso.b - scaled.b) == 0
    sub = k3.substitute_parameter(cat["S4"], cat["S4-aux"], "12*(t - 2)/(t + 2)")
    congr_bad = []
    for p in counting.good_primes(31):
        residues = {surface_count(n, p, cache) % p for n in ("S1", "S2", "S3", "S4", "S5")}
        if len(residues) != 1:
            congr_bad.append(p)
    ok = euler_ok and iso_ok and sub.congruent and not congr_bad
    expected = (
        "five fiber configurations of Euler number 24; 2-isogeny lands on the "
        "u=2 rescaling; substituted model count-congruent at (7, 11, 13); "
        "pairwise count congruence mod p for good p <= 31"
    )
    observed = (
        f"Euler numbers {sorted(set(eulers.values()))}; isogeny match {iso_ok}; "
        f"substitution congruent {sub.congruent}; "
        + ("congruence net holds" if not congr_bad else f"net fails at {congr_bad}")
    )
    return ok, expected, observed


def _c11(cfg, cache):
    v = k3.isogeny_chain_verdict()
    ok = v.passed
    expected = (
        "Phi_2(j, sigma_-5 j) = 0 and Phi_3(j, sigma_-15 j) = 0 exactly; "
        "resultant of the two chains vanishes; polynomial data passes "
        "symmetry, Kronecker and CM checks"
    )
    zeros = [v.phi2_residue.is_zero(), v.phi3_residue.is_zero(), v.resultant_residue.is_zero()]
    observed = (
        f"residues zero {zeros}; phi2 {sorted(v.phi2_valid.items())}; "
        f"phi3 {sorted(v.phi3_valid.items())}"
    )
    return ok, expected, observed


def _c12(cfg, cache):
    cat = _catalog()
    parts = []
    ok = True
    for p in (23, 47):
        reds = k3.reduce_at_prime(cat["E"], p)
        traces = sorted({r.trace for r in reds})
        good = len(reds) == 4 and len(traces) == 1 and abs(traces[0]) == 6
        ok = ok and good
        parts.append(f"p={p}: {len(reds)} embeddings, traces {traces}")
    expected = "|a_P| = 6 and equal at all four degree-1 primes above 23 and 47"
    return ok, expected, "; ".join(parts)


def _c13(cfg, cache):
    forms = _forms()
    base = [(11, "-"), (53, "-"), (107, "+"), (139, "-")]
    sol = galois.solve_quadratic_character(base)
    ext = galois.solve_quadratic_character(base + [(127, "+"), (179, "-")])
    phi_sol = galois.solve_quadratic_character(galois.phi_constraints(forms))
    s_counts = {p: octic_count(p, cache) for p in (7, 11, 13, 17, 19, 23)}
    s1_counts = {p: surface_count("S1", p, cache) for p in (7, 11, 13, 17, 19, 23)}
    calib = galois.calibrate_character_convention(forms, s_counts, s1_counts)
    ok = (
        sol.status == "unique"
        and sol.d == -5
        and ext.status == "unique"
        and ext.d == -5
        and phi_sol.status == "unique"
        and phi_sol.d == -1
        and calib.adopted == "A"
    )
    expected = (
        "sign data pins chi_-5, stable under two more primes; the twist "
        "character is chi_-1; count calibration adopts reading A"
    )
    observed = (
        f"base {sol.status} {sol.candidates}; extended {ext.status} {ext.candidates}; "
        f"phi {phi_sol.status} {phi_sol.candidates}; calibration {calib.consistent} "
        f"adopted {calib.adopted}"
    )
    return ok, expected, observed


def _c14(cfg, cache):
    dims = newforms.dimension_audit()
    want = {"thm-s": 100, "thm-x": 300, "thm-y": 30}
    ok = dims == want
    return ok, f"dimensions {want}", f"dimensions {dict(sorted(dims.items()))}"


def _b31(cfg, cache):
    expected = "tr Frob_{31^2}(W) = 31^2 (a_31^2 - 62) on all four blocks"
    if not cfg.benchmark:
        return None, expected, "benchmark tier disabled"
    good, detail = _fp2_check(31, cache)
    return good, expected, detail


@dataclass(frozen=True)
class CriterionSpec:
    cid: str
    group: str
    title: str
    provenance: str
    runner: object


CRITERIA = {
    spec.cid: spec
    for spec in (
        CriterionSpec("C01", "thm-y", "two-power count system has the recorded unique solutions", "frozen", _c01),
        CriterionSpec("C02", "thm-y", "involution signatures from composed traces", "frozen", _c02),
        CriterionSpec("C03", "thm-x", "F_p enumeration reproduces all four coefficient tables", "table", _c03),
        CriterionSpec("C04", "thm-x", "F_{p^2} enumeration matches the W-block trace formula", "table", _c04),
        CriterionSpec("C05", "thm-x", "point counts meet the mod-p trace congruences", "derived", _c05),
        CriterionSpec("C06", "mod4", "GL2(Z/4) trace pattern and quartic splitting audit", "derived", _c06),
        CriterionSpec("C07", "fsl", "class coverage, non-cubic panel, geometric traces match tables", "table", _c07),
        CriterionSpec("C08", "fsl", "translation kernel search leaves the solution unique", "frozen", _c08),
        CriterionSpec("C09", "fsl", "sign distribution cannot reach the excluded trace", "frozen", _c09),
        CriterionSpec("C10", "k3-chain", "Kodaira configurations, 2-isogeny and substitution routes", "derived", _c10),
        CriterionSpec("C11", "k3-chain", "modular polynomial chain vanishes exactly", "derived", _c11),
        CriterionSpec("C12", "k3-chain", "reductions at split primes give one trace of size 6", "derived", _c12),
        CriterionSpec("C13", "characters", "quadratic characters pinned and calibration decisive", "derived", _c13),
        CriterionSpec("C14", "thm-s", "decomposition dimensions audit", "frozen", _c14),
        CriterionSpec("B31", "bench", "F_{31^2} enumeration matches the W-block trace formula", "table", _b31),
    )
}

GROUPS = {
    "thm-y": ("C01", "C02"),
    "thm-x": ("C03", "C04", "C05"),
    "mod4": ("C06",),
    "fsl": ("C07", "C08", "C09"),
    "k3-chain": ("C10", "C11", "C12"),
    "characters": ("C13",),
    "thm-s": ("C14",),
    "bench": ("B31",),
}


def run_criterion(cid: str, cfg: PipelineConfig, cache: CountCache | None = None) -> CriterionResult:
    spec = CRITERIA[cid]
    start = time.perf_counter()
    try:
        ok, expected, observed = spec.runner(cfg, cache)
        status = "skipped" if ok is None else ("pass" if ok else "fail")
    except Exception as exc:  # a crashing check is a failing check
        status = "fail"
        expected = "check completes"
        observed = f"{type(exc).__name__}: {exc}"
    return CriterionResult(
        cid=spec.cid,
        group=spec.group,
        title=spec.title,
        status=status,
        expected=expected,
        observed=observed,
        provenance=spec.provenance,
        elapsed=time.perf_counter() - start,
    )


def run_groups(cfg: PipelineConfig, groups) -> VerificationReport:
    cache = cfg.cache()
    report = VerificationReport()
    for group in groups:
        if group not in GROUPS:
            raise KeyError(f"unknown group {group!r}")
        for cid in GROUPS[group]:
            report.add(run_criterion(cid, cfg, cache))
    return report


def run_all(cfg: PipelineConfig) -> VerificationReport:
    return run_groups(cfg, list(GROUPS))
