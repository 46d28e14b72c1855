"""File formats: matrix text, fraction strings, CSV/JSON stability."""

import json
from fractions import Fraction

import pytest

from weightspec.codes import LinearCode, reed_solomon_generator, spectrum_direct
from weightspec.ensemble import EnsembleConfig, run_ensemble
from weightspec.gf import field_create
from weightspec.linalg import matrix
from weightspec.serialize import (
    frac_str,
    json_stable,
    matrix_text,
    parse_frac,
    parse_matrix_text,
    records_csv,
    spectrum_json_dict,
    summary_json,
    summary_json_dict,
)


def test_frac_str_forms():
    assert frac_str(Fraction(3)) == "3"
    assert frac_str(Fraction(77376, 78125)) == "77376/78125"
    assert frac_str(10**40) == str(10**40)
    assert frac_str(None) is None
    assert parse_frac("77376/78125") == Fraction(77376, 78125)
    assert parse_frac("-55/9") == Fraction(-55, 9)


def test_matrix_text_round_trip_prime_field():
    F = field_create(5)
    M = matrix(F, [[1, 1, 1, 1], [0, 1, 2, 3]])
    text = matrix_text(M)
    assert text.splitlines()[0] == "4 2 5 1"
    assert text.splitlines()[1] == "0 1"
    back = parse_matrix_text(text)
    assert back.rows == M.rows
    assert back.field == F


def test_matrix_text_round_trip_extension_field():
    F = field_create(2, 3)
    code = reed_solomon_generator(F, 5, 3)
    text = matrix_text(code.G)
    assert text.splitlines()[1] == "1 1 0 1"
    back = parse_matrix_text(text)
    assert back == code.G
    assert spectrum_direct(LinearCode(back)).counts == spectrum_direct(code).counts


def test_matrix_text_malformed():
    with pytest.raises(ValueError):
        parse_matrix_text("2 1 2\n0 1\n1 1\n")  # four header fields required
    with pytest.raises(ValueError):
        parse_matrix_text("2 2 2 1\n0 1\n1 1\n")  # missing a row
    with pytest.raises(ValueError):
        parse_matrix_text("2 1 2 1\n0 1\n1 1 1\n")  # row too long
    with pytest.raises(ValueError):
        parse_matrix_text("hello\n")


def test_spectrum_json_uses_decimal_strings():
    code = reed_solomon_generator(field_create(5), 4, 2)
    d = spectrum_json_dict(spectrum_direct(code), 5)
    assert d["counts"] == ["1", "0", "0", "16", "8"]
    json.dumps(d)  # must be serializable as-is


def test_records_csv_layout():
    cfg = EnsembleConfig(n=3, k=2, p=2, m=1, samples=4, master_seed=1)
    _, records = run_ensemble(cfg)
    text = records_csv(records, 3)
    lines = text.strip().splitlines()
    assert lines[0] == "idx,seed,rank,full_rank,a1,a2,dmin,N_1,N_2,N_3"
    assert len(lines) == 5
    first = lines[1].split(",")
    assert first[0] == "0"
    assert first[3] in ("0", "1")
    assert first[5] == ""  # a2 disabled automatically: q=2 < n=3


def test_summary_json_stable_and_parseable():
    cfg = EnsembleConfig(n=4, k=2, p=5, m=1, samples=25, master_seed=9)
    s1, _ = run_ensemble(cfg)
    s2, _ = run_ensemble(cfg)
    t1, t2 = summary_json(s1), summary_json(s2)
    assert t1 == t2
    obj = json.loads(t1)
    assert obj["schema"] == 1
    assert obj["config"]["master_seed"] == "9"
    assert obj["fractions"]["full_rank"] is not None
    assert isinstance(obj["per_weight"]["1"]["mu"], str)


def test_summary_json_dict_key_layout():
    cfg = EnsembleConfig(n=3, k=2, p=3, m=1, samples=5, master_seed=4)
    summary, _ = run_ensemble(cfg)
    d = summary_json_dict(summary)
    assert set(d) == {
        "schema", "config", "counts", "fractions", "thresholds",
        "theorem_bound", "per_weight", "violations",
    }
    assert d["counts"]["samples"] == "5"


def test_json_stable_sorted_keys():
    assert json_stable({"b": 1, "a": 2}).index('"a"') < json_stable(
        {"b": 1, "a": 2}
    ).index('"b"')
