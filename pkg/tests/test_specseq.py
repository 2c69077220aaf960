import json
import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from ehpkit import (
    FGAbGroup,
    FilteredComplex,
    SpecSeqError,
    SpecSeqMorphism,
    SpectralSequence,
    check_comparison,
    iso_test,
    random_comparison_pair,
    random_filtered_complex,
)

seeds = st.integers(0, 10**6)


def graded_homology(fc, p, n):
    """H_n(F_p / F_(p-1)) by sympy: restrict d to basis elements of filtration exactly p."""

    def block(k):
        if k < 1 or k > fc.top:
            return None
        rows = [a for a, f in enumerate(fc.filt[k - 1]) if f == p]
        cols = [b for b, f in enumerate(fc.filt[k]) if f == p]
        if not rows or not cols:
            return None
        return sympy.Matrix([[fc.d[k][a][b] for b in cols] for a in rows])

    dim = sum(1 for f in fc.filt.get(n, []) if f == p)
    out_, in_ = block(n), block(n + 1)
    rank_out = out_.rank() if out_ is not None else 0
    torsion, rank_in = [], 0
    if in_ is not None:
        S = sympy_snf(in_, domain=sympy.ZZ)
        diag = [abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0]
        rank_in = len(diag)
        torsion = [d for d in diag if d > 1]
    return FGAbGroup.from_invariants(sorted(torsion), dim - rank_out - rank_in)


def z(n=1):
    return FGAbGroup.free(n)


def test_zero_differentials_keep_e1():
    ss = SpectralSequence.from_e1({(0, 0): z(), (1, 0): z(), (0, 1): FGAbGroup.cyclic(3)}, {})
    for pos, g in ss.page(1).items():
        assert iso_test(ss.entry(2, *pos), g)
        assert iso_test(ss.stable_page(*pos), g)


def test_iso_d1_kills_both():
    ss = SpectralSequence.from_e1({(0, 0): z(), (1, 0): z()}, {(1, 0): [[1]]})
    assert ss.entry(2, 0, 0).is_trivial() and ss.entry(2, 1, 0).is_trivial()


def test_d1_times_two():
    ss = SpectralSequence.from_e1({(0, 0): z(), (1, 0): z()}, {(1, 0): [[2]]})
    assert ss.entry(2, 0, 0).invariants == [2] and ss.entry(2, 1, 0).is_trivial()


def test_e1_rejects_bad_d1():
    with pytest.raises(SpecSeqError):
        SpectralSequence.from_e1({(0, 0): z(), (1, 0): FGAbGroup.cyclic(2)}, {(1, 0): [[1]]})
    with pytest.raises(SpecSeqError):
        SpectralSequence.from_e1({(-1, 0): z()}, {})


def test_one_step_filtration_gives_homology():
    # C_0 = Z, C_1 = Z^2, d = [2, 2], everything in filtration 0
    fc = FilteredComplex({0: [0], 1: [0, 0]}, {1: [[2, 2]]})
    ss = SpectralSequence.from_filtered_complex(fc)
    assert ss.entry(1, 0, 0).invariants == [2]
    assert ss.entry(1, 0, 1).free_rank == 1
    for r in (2, 3, 4):
        assert iso_test(ss.entry(r, 0, 0), fc.homology(0))
        assert iso_test(ss.entry(r, 0, 1), fc.homology(1))


def test_two_step_acyclic():
    # x in C_1 filtration 1, y in C_0 filtration 0, d x = y: d^1 kills both
    fc = FilteredComplex({0: [0], 1: [1]}, {1: [[1]]})
    ss = SpectralSequence.from_filtered_complex(fc)
    assert all(g.is_trivial() for g in ss.page(ss.last_page()).values())


def test_higher_differential():
    # x in C_2 at filtration 2 with dx = y at filtration 0: invisible to d^1, killed by d^2
    fc = FilteredComplex({0: [], 1: [0], 2: [2]}, {2: [[1]]})
    ss = SpectralSequence.from_filtered_complex(fc)
    assert ss.entry(2, 2, 0).free_rank == 1 and ss.entry(2, 0, 1).free_rank == 1
    assert ss.entry(3, 2, 0).is_trivial() and ss.entry(3, 0, 1).is_trivial()


@pytest.mark.parametrize(
    "filt, d",
    [
        ({0: [1]}, {}),  # filtration above the degree
        ({0: [0], 1: [0]}, {1: [[1, 2]]}),  # wrong shape
        ({0: [0], 1: [1], 2: [2]}, {1: [[1]], 2: [[1]]}),  # d d != 0
        ({0: [], 1: [1], 2: [0]}, {2: [[1]]}),  # d raises filtration
    ],
)
def test_filtered_complex_validation(filt, d):
    with pytest.raises(SpecSeqError):
        FilteredComplex(filt, d)


@settings(max_examples=40)
@given(seeds)
def test_e1_matches_graded_homology(seed):
    fc = random_filtered_complex(random.Random(seed))
    ss = SpectralSequence.from_filtered_complex(fc)
    for (i, j) in ss.positions:
        assert iso_test(ss.entry(1, i, j), graded_homology(fc, i, i + j))


@settings(max_examples=40)
@given(seeds)
def test_abutment(seed):
    fc = random_filtered_complex(random.Random(seed))
    ss = SpectralSequence.from_filtered_complex(fc)
    assert ss.abutment_mismatches() == []


@settings(max_examples=25)
@given(seeds)
def test_pages_are_homology_and_dd_zero(seed):
    ss = SpectralSequence.from_filtered_complex(random_filtered_complex(random.Random(seed)))
    for r in range(1, 5):
        ss.page(r + 1)  # turn_page checks ker/im against the stored page
        for (i, j) in ss.positions:
            d = ss.differential(r, i, j)
            assert ss.differential(r, i - r, j + r - 1).compose(d).is_zero()


@settings(max_examples=25)
@given(seeds)
def test_stable_value_is_stable(seed):
    ss = SpectralSequence.from_filtered_complex(random_filtered_complex(random.Random(seed)))
    for (i, j) in ss.positions:
        assert iso_test(ss.stable_page(i, j), ss.entry(i + j + 3, i, j))
    assert ss.stable_index(0, 0) == 3


def test_page_json_schema():
    ss = SpectralSequence.from_filtered_complex(random_filtered_complex(random.Random(5)))
    data = json.loads(json.dumps(ss.to_json(2)))
    assert set(data) == {"r", "entries"} and data["r"] == 2
    for e in data["entries"]:
        assert set(e) == {"i", "j", "invariants", "rank"}
        assert iso_test(FGAbGroup.from_invariants(e["invariants"], e["rank"]), ss.entry(2, e["i"], e["j"]))


@pytest.mark.parametrize("q", [0, 1, 3, 10])
def test_identity_morphism_passes(q):
    fc = random_filtered_complex(random.Random(q))
    ss = SpectralSequence.from_filtered_complex(fc)
    ident = {n: [[int(a == b) for b in range(fc.dim(n))] for a in range(fc.dim(n))] for n in fc.filt}
    rep = check_comparison(SpecSeqMorphism.from_chain_map(ss, ss, ident), q)
    assert rep.hypothesis_holds and rep.passed


def test_failing_hypothesis_is_reported():
    src = SpectralSequence.from_e1({(0, 0): z()}, {})
    tgt = SpectralSequence.from_e1({(0, 0): z()}, {})
    rep = check_comparison(SpecSeqMorphism.from_theta1(src, tgt, {(0, 0): [[2]]}), 1)
    assert not rep.hypothesis_holds and "hypothesis fails" in str(rep)


def test_non_commuting_theta_rejected():
    src = SpectralSequence.from_e1({(0, 0): z(), (1, 0): z()}, {(1, 0): [[1]]})
    tgt = SpectralSequence.from_e1({(0, 0): z(), (1, 0): z()}, {(1, 0): [[1]]})
    with pytest.raises(SpecSeqError):
        SpecSeqMorphism.from_theta1(src, tgt, {(1, 0): [[1]], (0, 0): [[2]]})


@settings(max_examples=20)
@given(seeds, st.integers(0, 4))
def test_comparison_on_random_pairs(seed, q):
    C, Cp, theta = random_comparison_pair(random.Random(seed), q)
    m = SpecSeqMorphism.from_chain_map(SpectralSequence.from_filtered_complex(C), SpectralSequence.from_filtered_complex(Cp), theta)
    rep = check_comparison(m, q)
    if rep.hypothesis_holds:
        assert rep.passed, str(rep)
