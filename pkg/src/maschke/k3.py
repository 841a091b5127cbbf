"""Kodaira classification for the elliptic K3 catalog and the isogeny chain
of the curve E over K = Q(sqrt3, sqrt-5).

The fibrations live over Q(t), so every residue field in sight has
characteristic zero and Tate's algorithm collapses to the tame table read
off the valuations (v(c4), v(c6), v(Delta)) at each irreducible factor of
the discriminant and at t = infinity.  Parameter changes between fibrations
of the same surface are validated numerically, by total-space point counts
mod p at three primes; symbolic birational geometry is out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass

import sympy as sp

from . import numberfield as nf
from .models import EllipticCurveModel, KCurveModel, WeierstrassModel, t


class NonMinimalModelError(ArithmeticError):
    def __init__(self, place: str, transform: str):
        self.place = place
        self.transform = transform
        super().__init__(f"non-minimal at {place}; apply {transform}")


@dataclass(frozen=True)
class KodairaFiber:
    place: str  # irreducible factor of Delta over Q, or "oo"
    fiber_type: str
    euler: int  # per geometric fiber
    places: int = 1  # number of geometric fibers (degree of the factor)

    @property
    def total_euler(self) -> int:
        return self.euler * self.places


_ADDITIVE = {2: "II", 3: "III", 4: "IV", 6: "I0*", 8: "IV*", 9: "III*", 10: "II*"}


def _valuation(poly: sp.Poly, pi: sp.Poly) -> int:
    if poly.is_zero:
        raise ValueError("valuation of the zero polynomial")
    v = 0
    while poly.degree() >= pi.degree():
        quo, rem = sp.div(poly, pi)
        if not rem.is_zero:
            break
        poly, v = quo, v + 1
    return v


def _fiber_type(alpha: int, beta: int, delta: int, place: str) -> tuple[str, int]:
    """Kodaira type and local Euler number from the valuation triple."""
    if alpha == 0:
        return f"I{delta}", delta
    if alpha >= 4 and beta >= 6 and delta >= 12:
        raise NonMinimalModelError(place, "(x, y) -> (pi^2 x, pi^3 y)")
    if 3 * alpha >= delta:  # v(j) >= 0
        if delta not in _ADDITIVE:
            raise ArithmeticError(f"unexpected additive valuation {delta} at {place}")
        return _ADDITIVE[delta], delta
    if (alpha, beta) != (2, 3):
        raise ArithmeticError(f"untame valuations ({alpha},{beta},{delta}) at {place}")
    return f"I{delta - 6}*", delta


def kodaira_classify(model: WeierstrassModel) -> list[KodairaFiber]:
    """Full singular-fiber configuration, one entry per irreducible place."""
    fibers = []
    c4 = sp.Poly(model.c4(), t, domain="QQ")
    c6 = sp.Poly(model.c6(), t, domain="QQ")
    _, factors = sp.factor_list(model.disc(), t)
    for fac, delta in sorted(factors, key=lambda fm: sp.sstr(fm[0])):
        pi = sp.Poly(fac, t, domain="QQ")
        if pi.degree() == 0:
            continue
        name = sp.sstr(fac)
        typ, euler = _fiber_type(_valuation(c4, pi), _valuation(c6, pi), delta, name)
        fibers.append(KodairaFiber(name, typ, euler, pi.degree()))
    inf = model.at_infinity()
    pi = sp.Poly(t, t, domain="QQ")
    d_inf = _valuation(sp.Poly(inf.disc(), t, domain="QQ"), pi)
    if d_inf:
        typ, euler = _fiber_type(
            _valuation(sp.Poly(inf.c4(), t, domain="QQ"), pi),
            _valuation(sp.Poly(inf.c6(), t, domain="QQ"), pi),
            d_inf,
            "oo",
        )
        fibers.append(KodairaFiber("oo", typ, euler, 1))
    return fibers


def euler_sum(fibers) -> int:
    return sum(f.total_euler for f in fibers)


def configuration(fibers) -> dict[str, int]:
    """Geometric fiber multiset, type -> number of fibers."""
    out: dict[str, int] = {}
    for f in fibers:
        out[f.fiber_type] = out.get(f.fiber_type, 0) + f.places
    return out


# ---- isogenies and twists -------------------------------------------------


def two_isogeny(model: WeierstrassModel) -> WeierstrassModel:
    """Quotient by the 2-torsion section (0,0):
    y^2 = x(x^2 + ax + b)  ->  y^2 = x(x^2 - 2ax + (a^2 - 4b))."""
    b2 = sp.expand(model.a**2 - 4 * model.b)
    if b2 == 0:
        raise ValueError(f"{model.name}: degenerate 2-isogeny (b = a^2/4)")
    return WeierstrassModel(model.name + "_iso2", sp.expand(-2 * model.a), b2)


def weierstrass_scale(model: WeierstrassModel, usq) -> WeierstrassModel:
    """The admissible change (x, y) -> (u^2 x, u^3 y): (a, b) -> (u^2 a, u^4 b)."""
    return WeierstrassModel(
        model.name + "_scaled", sp.expand(usq * model.a), sp.expand(usq**2 * model.b)
    )


def quadratic_twist(model: WeierstrassModel, d: int) -> WeierstrassModel:
    if d == 0 or any(d % (q * q) == 0 for q in range(2, int(abs(d)) + 1) if q * q <= abs(d)):
        raise ValueError(f"twist by {d}: squarefree nonzero d required")
    if d == 1:
        return model
    return WeierstrassModel(
        f"{model.name}_twist{d}", sp.expand(d * model.a), sp.expand(d * d * model.b)
    )


@dataclass
class SubstitutionReport:
    parameter: str
    primes: tuple
    counts_source: dict
    counts_target: dict
    congruent: bool


def substitute_parameter(
    model: WeierstrassModel,
    declared: WeierstrassModel,
    parameter: str,
    primes=(7, 11, 13),
) -> SubstitutionReport:
    """Validate a declared change of elliptic parameter numerically: both
    fibrations present the same surface, so their total-space counts must be
    congruent mod p.  Inconsistent counts reject the substitution."""
    from .counting import count_elliptic_surface

    counts_a, counts_b = {}, {}
    for p in primes:
        counts_a[p] = count_elliptic_surface(model, p)
        counts_b[p] = count_elliptic_surface(declared, p)
        if (counts_a[p] - counts_b[p]) % p:
            raise ArithmeticError(
                f"substitution {parameter}: counts {counts_a[p]} vs {counts_b[p]} "
                f"differ mod {p}"
            )
    return SubstitutionReport(parameter, tuple(primes), counts_a, counts_b, True)


# ---- modular polynomial validation and the chain verdict ------------------

# rational j-invariants of CM curves admitting a rational l-isogeny to
# themselves: classical roots of Phi_l(x, x)
CM_SELF_ISOGENOUS = {2: (1728, 8000, -3375), 3: (0, 54000, -32768)}


def validate_modular_polynomial(phi: nf.ModularPolynomial) -> dict[str, bool]:
    ell = phi.ell
    sym = all(phi.coeffs.get((j, i)) == c for (i, j), c in phi.coeffs.items())
    # Kronecker congruence: Phi_l(x,y) = (x^l - y)(x - y^l) mod l
    kron_target = {(ell + 1, 0): 1, (ell, ell): -1, (1, 1): -1, (0, ell + 1): 1}
    keys = set(phi.coeffs) | set(kron_target)
    kron = all(
        (phi.coeffs.get(k, 0) - kron_target.get(k, 0)) % ell == 0 for k in keys
    )
    cm = all(
        phi.evaluate(nf.NFElem.rational(j0), nf.NFElem.rational(j0)).is_zero()
        for j0 in CM_SELF_ISOGENOUS[ell]
    )
    return {"symmetric": sym, "kronecker": kron, "cm_roots": cm}


def j_of_E() -> nf.NFElem:
    from .models import _curve_E

    return _curve_E().j_invariant()


@dataclass
class ChainVerdict:
    phi2_valid: dict
    phi3_valid: dict
    phi2_residue: nf.NFElem
    phi3_residue: nf.NFElem
    resultant_residue: nf.NFElem

    @property
    def passed(self) -> bool:
        return (
            all(self.phi2_valid.values())
            and all(self.phi3_valid.values())
            and self.phi2_residue.is_zero()
            and self.phi3_residue.is_zero()
            and self.resultant_residue.is_zero()
        )


def isogeny_chain_verdict(phi2=None, phi3=None) -> ChainVerdict:
    """E is 2-isogenous to its sigma_m5 conjugate, 3-isogenous to its
    sigma_m15 conjugate, hence 6-isogenous to the sigma_3 conjugate: the
    first two by exact vanishing of the modular polynomials at the
    j-invariants, the composite through the resultant of Phi2(j, x) and
    Phi3(x, sigma3(j)), which vanishes iff they share a root."""
    from importlib import resources

    root = resources.files("maschke").joinpath("data/modpoly")
    if phi2 is None:
        phi2 = nf.load_modular_polynomial(root.joinpath("phi2.txt"))
    if phi3 is None:
        phi3 = nf.load_modular_polynomial(root.joinpath("phi3.txt"))
    j = j_of_E()
    r2 = phi2.evaluate(j, j.sigma_m5())
    r3 = phi3.evaluate(j, j.sigma_m15())
    res = nf.resultant(phi2.univariate(j), phi3.univariate(j.sigma3()))
    return ChainVerdict(
        phi2_valid=validate_modular_polynomial(phi2),
        phi3_valid=validate_modular_polynomial(phi3),
        phi2_residue=r2,
        phi3_residue=r3,
        resultant_residue=res,
    )


# ---- reduction of E at degree-1 primes ------------------------------------


@dataclass(frozen=True)
class ReducedCurve:
    p: int
    embedding: tuple[int, int]  # images of (sqrt3, sqrt-5)
    a4: int
    a6: int
    trace: int


def reduce_at_prime(curve: KCurveModel, p: int) -> list[ReducedCurve]:
    """All degree-1 reductions of E at a completely split prime, with their
    Frobenius traces.  Non-split primes are out of scope by design."""
    from .counting import count_elliptic_curve

    if not nf.splits_completely(p):
        raise ValueError(f"{p} is not completely split in K")
    out = []
    for r3, r5 in nf.embeddings(p):
        a4 = curve.A.reduce_mod(p, r3, r5)
        a6 = curve.B.reduce_mod(p, r3, r5)
        disc = (4 * pow(a4, 3, p) + 27 * a6 * a6) % p
        if disc == 0:
            raise ArithmeticError(f"bad reduction at {p} under {(r3, r5)}")
        model = EllipticCurveModel(f"E_{p}_{r3}_{r5}", (0, 0, 0, a4, a6))
        count = count_elliptic_curve(model, p)
        out.append(ReducedCurve(p, (r3, r5), a4, a6, p + 1 - count))
    return out
