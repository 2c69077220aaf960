import pytest

from ehpkit import (
    S1,
    S2,
    S2vS2,
    Word,
    check_simplicial_map,
    dn_quotient,
    homology,
    inclusion,
    induced_map,
    j2_matches_quotient_on_chains,
    james_hopf_j2,
    james_truncated,
    les_exact,
    map_is_injective,
    map_is_surjective,
    smash_power,
    two_subsets,
)
from ehpkit.james import homology_table


def canon(res):
    return [g.canonical() for g in res.groups]


def test_two_subsets_order():
    assert two_subsets(4) == [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)]
    assert two_subsets(1) == []


def test_word_validation():
    J = james_truncated(S2, 2)
    w = Word.of(J, J.simplex(J.nondegenerate(4)[0]))
    assert w.level == 4 and len(w) == 2 and w.bound == 2
    with pytest.raises(ValueError):
        Word(w.letters, 4, 1)
    with pytest.raises(ValueError):
        Word(w.letters, 3, 2)


@pytest.mark.parametrize("X", [S2, S2vS2, S1], ids=lambda X: X.name)
def test_d2_matches_smash_square(X):
    D, _ = dn_quotient(X, 2)
    cap = 2 * (X.max_dim)
    assert canon(homology(D, cap)) == canon(homology(smash_power(X, 2), cap))


def test_d1_is_x():
    D, q = dn_quotient(S2, 1)
    assert canon(homology(D, 2)) == canon(homology(S2, 2))


def test_quotient_map_is_simplicial():
    _, q = dn_quotient(S2, 3)
    assert check_simplicial_map(q, 5).ok


@pytest.mark.parametrize("X, n, cap", [(S1, 3, 4), (S2, 3, 5), (S2vS2, 2, 4)])
def test_j2_is_simplicial(X, n, cap):
    rep = check_simplicial_map(james_hopf_j2(X, n), cap)
    assert rep.ok, rep.failures


@pytest.mark.parametrize("X", [S1, S2, S2vS2], ids=lambda X: X.name)
def test_j2_on_j2_is_the_quotient(X):
    assert j2_matches_quotient_on_chains(X, 2 * X.max_dim)


def test_j2_constant_on_one_letter_words():
    j2 = james_hopf_j2(S2, 3)
    J = j2.source
    for k in range(5):
        for key in J.nondegenerate(k):
            if len(J.word(key)) <= 1:
                assert j2.target.is_base(j2(J.simplex(key)))


def test_j2_uses_every_pair_in_order():
    j2 = james_hopf_j2(S1, 3)
    J, T = j2.source, j2.target
    top = [key for key in J.nondegenerate(3) if len(J.word(key)) == 3][0]
    out = j2(J.simplex(top))
    assert len(T.letters_of(out)) == 3


def test_j2_needs_two():
    with pytest.raises(ValueError):
        james_hopf_j2(S2, 1)


@pytest.mark.parametrize("X, n, cap", [(S1, 2, 3), (S2, 2, 4), (S1, 3, 4)])
def test_les_exact(X, n, cap):
    out = les_exact(X, n, cap)
    assert out and all(out.values()), out


def test_inclusion_on_homology():
    maps = induced_map(inclusion(S2, 1, 2), 3)
    assert map_is_injective(maps[2]) and map_is_surjective(maps[2])


def test_homology_table_entry_point():
    assert canon(homology_table("s2", 2, 4)) == [((), 1), ((), 0), ((), 1), ((), 0), ((), 1)]
