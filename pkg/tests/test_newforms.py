"""Newform table ingestion and trace assembly.  Expected values: explicit
coefficients frozen from the shipped tables (which the generator script
cross-validates against point counts), plus algebraic identities."""

import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from maschke.newforms import (
    Piece,
    assemble_trace,
    assemble_trace_fp2,
    character_value,
    decomposition_specs,
    derive_f120,
    dimension_audit,
    load_newforms,
    spec_trace_mod_p,
    trace_sym2,
    _parse_file,
)

FORMS = load_newforms()
SPECS = decomposition_specs()


def test_all_tables_load():
    assert set(FORMS) == {"f15", "f15C", "f24B", "f120", "f120E", "f1200"}
    assert FORMS["f120"].weight == 4
    assert FORMS["f15"].weight == 3
    assert FORMS["f1200"].level == 1200
    assert FORMS["f15"].nebentypus == -15
    assert FORMS["f1200"].nebentypus == -3


def test_frozen_coefficients():
    assert FORMS["f1200"].ap_parts(7) == (0, 0, 1)
    assert FORMS["f1200"].ap_parts(11) == (0, 2, 6)  # 2 sqrt6
    assert FORMS["f1200"].ap(23) == -6
    assert FORMS["f1200"].ap(47) == 6
    assert FORMS["f120E"].ap(7) == 0
    assert FORMS["f120E"].ap(11) == -4
    assert FORMS["f120E"].ap(13) == 6
    assert FORMS["f120"].ap(13) == 54
    assert FORMS["f24B"].ap(11) == 4
    assert FORMS["f15C"].ap(13) == -2
    assert FORMS["f15"].ap(17) == 14


def test_irrational_access_raises():
    with pytest.raises(ValueError):
        FORMS["f1200"].ap(11)
    # but the square is rational: (2 sqrt6)^2 = 24
    assert FORMS["f1200"].ap_square(11) == 24


def test_elliptic_tables_match_curve_counts():
    from maschke.counting import ap_elliptic
    from maschke.models import EllipticCurveModel

    curves = {
        "f15C": EllipticCurveModel("15a", (1, 1, 1, -10, -10)),
        "f24B": EllipticCurveModel("24a", (0, -1, 0, -4, 4)),
        "f120E": EllipticCurveModel("120b", (0, 1, 0, -15, 18)),
    }
    for label, model in curves.items():
        rec = FORMS[label]
        for p in rec.primes():
            assert rec.ap(p) == ap_elliptic(model, p), (label, p)


def test_weil_bound_rejection():
    text = "bad 2 7 1 1\n11 9 0\n"
    with pytest.raises(ValueError, match="Weil"):
        _parse_file(text, "bad.txt")


def test_schema_violations():
    with pytest.raises(ValueError, match="radicand"):
        _parse_file("f 2 7 1 0\n11 1 1\n", "f")
    with pytest.raises(ValueError, match="duplicate"):
        _parse_file("f 2 7 1 1\n11 1 0\n11 1 0\n", "f")
    with pytest.raises(ValueError, match="good"):
        _parse_file("f 2 15 1 1\n5 1 0\n", "f")
    with pytest.raises(ValueError, match="header"):
        _parse_file("f 2 7 1\n", "f")


def test_rational_coefficient_parsing():
    rec = _parse_file("demo 2 7 1 1\n11 5/2 1/2 5\n", "demo")
    assert rec.ap_parts(11) == (Fraction(5, 2), Fraction(1, 2), 5)
    # (5/2)^2 + 5*(1/2)^2 = 7.5 < 4*11: Weil fine


def test_character_value():
    assert character_value(1, 7) == 1
    assert character_value(-4, 7) == -1  # (-1/7)
    assert character_value(-4, 13) == 1
    with pytest.raises(ValueError):
        character_value(-4, 2)


def test_dimension_audit():
    dims = dimension_audit()
    assert dims == {"thm-x": 300, "thm-y": 30, "thm-s": 100}


def test_piece_dimensions():
    assert Piece(1, "f120", 0).dim == 2
    assert Piece(18, "f1200", 0, -15, "sym2").dim == 54


def test_assembled_traces_frozen():
    # Y-motive trace at 11: 4 + 5*11*(-4) + 9*11*4 = 180
    assert assemble_trace(SPECS["thm-y"], FORMS, 11) == 180
    assert assemble_trace(SPECS["thm-y"], FORMS, 13) == 210
    # X-motive at 13 folds to a120 + 13*(50*6 + 54*(-2) + 45*(-2)) = 1380
    assert assemble_trace(SPECS["thm-x"], FORMS, 13) == 1380
    # over F_121
    assert assemble_trace_fp2(SPECS["thm-x"], FORMS, 11) == -110820


def test_x_fold_identity_at_split_primes():
    # with chi_{-1}(p) = 1 the X-spec collapses onto the four-form fold
    for p in (13, 17, 29, 37):
        a120 = FORMS["f120"].ap(p)
        folded = a120 + p * (
            50 * FORMS["f120E"].ap(p)
            + 54 * FORMS["f24B"].ap(p)
            + 45 * FORMS["f15C"].ap(p)
        )
        assert assemble_trace(SPECS["thm-x"], FORMS, p) == folded


def test_y_piece_inside_x():
    # thm-x contains thm-y's pieces with multiplicities 1, 32+18, 36+18
    for p in (13, 17, 29):
        eps = character_value(-4, p)
        y_part = (
            FORMS["f120"].ap(p)
            + (32 + 18 * eps) * p * FORMS["f120E"].ap(p)
            + (36 + 18 * eps) * p * FORMS["f24B"].ap(p)
        )
        x_minus_s = assemble_trace(SPECS["thm-x"], FORMS, p) - (
            27 + 18 * eps
        ) * p * FORMS["f15C"].ap(p)
        assert x_minus_s == y_part


def test_trace_sym2_examples():
    # b7 = 0 -> -eps(7) * 7; nebentypus -3 at 7: (-3/7) = 1
    assert character_value(-3, 7) == 1
    assert trace_sym2(FORMS["f1200"], 7) == -7
    # b11^2 = 24, eps(11) = (-3/11) = -1 -> 24 + 11
    assert character_value(-3, 11) == -1
    assert trace_sym2(FORMS["f1200"], 11) == 35
    # weight 2 trivial character, a = 0 -> -p
    assert FORMS["f120E"].ap(7) == 0
    assert trace_sym2(FORMS["f120E"], 7) == -7


def test_sym2_fp2_identity_exhaustive():
    # sym2 trace = F_{p^2} trace + eps(p) p^{k-1}, for every tabled value
    for rec in FORMS.values():
        for p in rec.primes():
            lhs = trace_sym2(rec, p)
            rhs = rec.trace_fp2(p) + rec.eps(p) * p ** (rec.weight - 1)
            assert lhs == rhs, (rec.label, p)


def test_global_weil_bound_on_assembled_traces():
    for p in FORMS["f120"].primes():
        tr = assemble_trace(SPECS["thm-x"], FORMS, p)
        assert abs(tr) <= 302 * p * p  # 2 p^{3/2} + 300 p^{3/2} < 302 p^2


def test_s_spec_trace_at_7():
    # a_7(f15) = 0 (7 inert in Q(sqrt-15)) and s_7 = 0, so only the
    # -eps(7) p terms survive: divisible by 7
    assert spec_trace_mod_p(SPECS["thm-s"], FORMS, 7) == 0


def test_derive_f120_from_counts():
    from maschke.counting import composed_point_counts

    counts = {p: composed_point_counts(p) for p in (13, 17)}
    assert derive_f120(counts, FORMS) == {13: 54, 17: 114}
    with pytest.raises(ValueError):
        derive_f120({5: {}}, FORMS)


def test_derive_f120_detects_corrupt_table():
    import dataclasses

    from maschke.counting import composed_point_counts

    counts = {13: composed_point_counts(13)}
    # a perturbed count breaks extraction integrality outright
    bad_counts = {13: dict(counts[13], id=counts[13]["id"] + 13 * 4)}
    with pytest.raises(ArithmeticError, match="nonintegral"):
        derive_f120(bad_counts, FORMS)
    # a tampered table survives extraction but fails the comparison
    f120 = FORMS["f120"]
    bad_coeffs = dict(f120.coeffs)
    bad_coeffs[13] = (58, 0, 1)
    tampered = dict(FORMS)
    tampered["f120"] = dataclasses.replace(f120, coeffs=bad_coeffs)
    with pytest.raises(ArithmeticError, match="disagree"):
        derive_f120(counts, tampered)


def test_table_regeneration_is_byte_identical():
    script = Path(__file__).resolve().parents[1] / "tools" / "gen_newform_data.py"
    proc = subprocess.run(
        [sys.executable, str(script), "--check"],
        capture_output=True,
        text=True,
        timeout=300,
    )
    assert proc.returncode == 0, proc.stdout + proc.stderr
