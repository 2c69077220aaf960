import csv
import io
import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from ehpkit import (
    NONREAL,
    REAL,
    PrimeSet,
    Resolution,
    SheafLabel,
    TableParams,
    Z,
    Z2,
    abutment_label,
    build_table,
    e1_entry,
    morel_zero_stem,
    render_table,
    truncated_e1_entry,
)

GOLDEN = Path(__file__).parent / "golden"


def zero_stem_oracle(d, v, a, b):
    """Case table for pi_(d + v alpha) S^(a + b alpha), written out independently."""
    if d < a:
        return ("Zero", None)
    if d > a:
        return ("Unresolved", None)
    if b == 0 and v == 0:
        return ("Integers", None)
    if b > 0 and v == 0:
        return ("Zero", None)
    if b > 0:
        return ("KMW", b - v)
    return ("Unresolved", None)


def test_zero_stem_examples():
    assert morel_zero_stem(2, 1, 3, 1).resolution is Resolution.ZERO
    lab = morel_zero_stem(2, 1, 2, 2)
    assert lab.resolution is Resolution.KMW and lab.kmw_index == 1
    assert morel_zero_stem(2, 0, 2, 0).resolution is Resolution.INTEGERS
    assert str(morel_zero_stem(5, 2, 5, 2)) == "GW⊗Z_(2)"
    assert str(morel_zero_stem(5, 2, 5, 2, Z)) == "GW"


@pytest.mark.parametrize("d, a", [(1, 2), (2, 1), (0, 5)])
def test_zero_stem_preconditions(d, a):
    with pytest.raises(ValueError):
        morel_zero_stem(d, 0, a, 0)


@given(st.integers(2, 30), st.integers(0, 6), st.integers(2, 30), st.integers(0, 6))
def test_zero_stem_matches_case_table(d, v, a, b):
    lab = morel_zero_stem(d, v, a, b)
    assert (lab.resolution.value, lab.kmw_index) == zero_stem_oracle(d, v, a, b)
    if lab.resolution is Resolution.UNRESOLVED:
        assert d > a or (d == a and b == 0 < v)


def test_label_invariant():
    with pytest.raises(ValueError):
        SheafLabel(3, 0, (5, 0), Z2, Resolution.INTEGERS)


def test_e1_examples():
    assert e1_entry(2, 0, 2, 0, 0).is_zero
    lab = e1_entry(4, 0, 2, 1, 2)
    assert (lab.degree, lab.sphere) == (5, (5, 2))
    assert lab.resolution is Resolution.KMW and lab.kmw_index == 0 and lab.value() == "GW⊗Z_(2)"
    assert e1_entry(3, 0, 2, 0, 0).is_zero


def test_e1_label_text():
    lab = e1_entry(6, 1, 2, 1, 2)
    assert lab.value() == "Z_(2)⊗π_{8+2α}(S^{7+2α})"
    assert lab.group() == lab.value()
    assert e1_entry(6, 1, 2, 1, 2, Z).value() == "π_{8+2α}(S^{7+2α})"


@given(st.integers(-5, 40), st.integers(-5, 15), st.integers(2, 6), st.integers(0, 4), st.integers(0, 4))
def test_e1_vanishes_below_the_line(i, m, n, q, v):
    lab = e1_entry(i, m, n, q, v)
    if i < 0 or m < 0 or i < 2 * n - 1 + m:
        assert lab.is_zero
    else:
        assert (lab.degree, lab.twist, lab.sphere) == (m + 1 + i, v, (2 * m + 2 * n + 1, 2 * q))
        assert (lab.resolution.value, lab.kmw_index) == zero_stem_oracle(m + 1 + i, v, 2 * m + 2 * n + 1, 2 * q)


@given(st.integers(0, 40), st.integers(0, 15), st.integers(2, 6), st.integers(0, 6), st.integers(0, 4), st.integers(0, 4))
def test_truncated(i, m, n1, extra, q, v):
    n2 = n1 + extra
    lab = truncated_e1_entry(i, m, n1, n2, q, v)
    if m >= n2 - n1:
        assert lab.is_zero
    else:
        assert lab == e1_entry(i, m, n1, q, v)


def test_truncated_examples():
    assert truncated_e1_entry(10, 3, 2, 5, 1, 2).is_zero
    assert truncated_e1_entry(10, 0, 2, 5, 1, 2) == e1_entry(10, 0, 2, 1, 2)
    assert all(truncated_e1_entry(i, m, 3, 3, 1, 1).is_zero for i in range(20) for m in range(10))
    with pytest.raises(ValueError):
        truncated_e1_entry(0, 0, 3, 2, 0, 0)


def test_abutment_labels():
    assert abutment_label(7, 2, 1, 2) == "Z_(2)⊗π^s_{7+2α}(S^{2+α})"
    assert abutment_label(7, 2, 1, 2, n2=5) == "Z_(2)⊗π_{7+2α}(S^{5+α})"


def test_one_by_one_grid():
    text = render_table(TableParams(2, 0, 0), 1, 1, "csv")
    rows = list(csv.reader(io.StringIO(text)))
    assert rows == [["i", "m=0", "abutment"], ["0", "0", "Z_(2)⊗π^s_{0}(S^{2})"]]
    with pytest.raises(ValueError):
        build_table(TableParams(2, 0, 0), 0, 1)


@given(st.integers(1, 25), st.integers(1, 12))
def test_csv_row_count(rows, cols):
    text = render_table(TableParams(3, 1, 1), rows, cols, "csv")
    parsed = list(csv.reader(io.StringIO(text)))
    assert len(parsed) == rows + 1
    assert all(len(r) == cols + 2 for r in parsed)


def test_json_round_trip():
    data = json.loads(render_table(TableParams(2, 1, 2), 6, 3, "json"))
    assert data["unit_condition"] == "Holds"
    cells = [e for row in data["rows"] for e in row["entries"]]
    assert len(cells) == 18
    assert {c["resolution"] for c in cells} <= {"Zero", "KMW", "Unresolved", "Integers"}
    assert data["rows"][4]["entries"][0] == {
        "degree": 5, "twist": 2, "sphere": [5, 2], "primes": [2], "resolution": "KMW", "value": "GW⊗Z_(2)", "kmw": 0,
    }


def test_header_reports_unit_condition():
    text = render_table(TableParams(2, 0, 0, Z, REAL), 2, 2)
    assert "FailsAt(1)" in text.splitlines()[1]
    text = render_table(TableParams(2, 1, 0, PrimeSet.of(2, 3), NONREAL), 2, 2)
    assert "Holds" in text.splitlines()[1]
    with pytest.raises(ValueError):
        render_table(TableParams(2, 0, 0), 2, 2, "xml")


def test_golden_text_table():
    expected = (GOLDEN / "ehp_n2_q1_v0_8x4.txt").read_text(encoding="utf-8")
    assert render_table(TableParams(2, 1, 0), 8, 4, "text") == expected
    assert render_table(TableParams(2, 1, 0), 8, 4, "text") == expected  # stable across calls
