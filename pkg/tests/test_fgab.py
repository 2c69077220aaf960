import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from ehpkit import (
    FGAbError,
    FGAbGroup,
    Homomorphism,
    Lattice,
    Subquotient,
    bareiss,
    determinant,
    group_homology,
    hermite_rows,
    integer_kernel,
    invariant_factors,
    iso_test,
    map_is_injective,
    map_is_surjective,
    rational_rank,
    smith_diagonal,
    smith_normal_form,
    sparse_smith_diagonal,
)
from ehpkit.fgab import matmul, matrix_from_json, matrix_to_json

entries = st.integers(-9, 9)


@st.composite
def matrices(draw, max_side=7):
    m = draw(st.integers(1, max_side))
    n = draw(st.integers(1, max_side))
    return [draw(st.lists(entries, min_size=n, max_size=n)) for _ in range(m)]


def sympy_diagonal(M):
    S = sympy_snf(sympy.Matrix(M), domain=sympy.ZZ)
    return sorted(abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0)


def test_snf_examples():
    S, U, V = smith_normal_form([[2, 0], [0, 3]])
    assert S == [[1, 0], [0, 6]]
    S, U, V = smith_normal_form([[0, 0], [0, 0]])
    assert S == [[0, 0], [0, 0]] and U == V == [[1, 0], [0, 1]]
    assert smith_normal_form([[1]])[0] == [[1]]


@given(matrices(max_side=12))
def test_snf_round_trip(M):
    S, U, V = smith_normal_form(M)
    assert matmul(matmul(U, M), V) == S
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    diag = [S[i][i] for i in range(min(len(S), len(S[0])))]
    assert all(S[i][j] == 0 for i in range(len(S)) for j in range(len(S[0])) if i != j)
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz) and all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert diag[: len(nz)] == nz  # zeros trail


@given(matrices())
def test_snf_matches_sympy(M):
    assert sorted(smith_diagonal(M)) == sympy_diagonal(M)
    assert sparse_smith_diagonal({r: dict(enumerate(row)) for r, row in enumerate(M)}) == smith_diagonal(M)
    if M and M[0]:
        S = smith_normal_form(M)[0]
        assert [S[i][i] for i in range(min(len(S), len(S[0]))) if S[i][i]] == sorted(smith_diagonal(M))


@given(matrices())
def test_rank_and_det(M):
    assert rational_rank(M) == sympy.Matrix(M).rank()
    assert len(smith_diagonal(M)) == rational_rank(M)
    sq = [row[: len(M)] + [0] * max(0, len(M) - len(row)) for row in M]
    assert bareiss(sq)[1] == sympy.Matrix(sq).det()


@given(matrices())
def test_kernel(M):
    n = len(M[0])
    K = integer_kernel(M)
    for v in K:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)
    assert len(K) == n - sympy.Matrix(M).rank()
    # saturated: the kernel lattice has no index inside its rational span
    if K:
        assert sympy_diagonal(K) == [1] * len(K)


@given(matrices())
def test_rank_nullity(M):
    assert rational_rank(M) + len(integer_kernel(M)) == len(M[0])


@given(matrices())
def test_hermite_spans_same_lattice(M):
    n = len(M[0])
    H = hermite_rows(M, n)
    L = Lattice.span(n, M)
    assert all(L.contains(r) for r in M)
    assert Lattice.span(n, H) == L
    assert sorted(sympy_diagonal(H)) == sympy_diagonal(M)


@given(matrices(max_side=5), matrices(max_side=5))
def test_lattice_sum_and_intersection(A, B):
    n = len(A[0])
    B = [(row + [0] * n)[:n] for row in B]
    LA, LB = Lattice.span(n, A), Lattice.span(n, B)
    I = LA.intersect(LB)
    assert LA.contains_lattice(I) and LB.contains_lattice(I)
    assert (LA + LB).contains_lattice(LA) and (LA + LB).contains_lattice(LB)
    assert I.rank + (LA + LB).rank == LA.rank + LB.rank


def test_groups():
    g = FGAbGroup(2, ((2, 0), (0, 3)))
    assert g.invariants == [6] and g.free_rank == 0 and g.order() == 6
    assert str(FGAbGroup.from_invariants([2], 1)) == "Z/2 + Z"
    assert str(FGAbGroup.free(0)) == "0"
    assert iso_test(FGAbGroup.from_invariants([2], 1), FGAbGroup(2, ((0, 2),)))
    assert not iso_test(FGAbGroup.cyclic(4), FGAbGroup.from_invariants([2, 2]))
    with pytest.raises(FGAbError):
        FGAbGroup(2, ((1,),))


def test_homomorphisms():
    Z1 = FGAbGroup.free(1)
    double = Homomorphism(Z1, Z1, [[2]])
    assert map_is_injective(double) and not map_is_surjective(double)
    assert iso_test(double.cokernel(), FGAbGroup.cyclic(2))
    zero_out = Homomorphism(Z1, FGAbGroup.free(0), [])
    assert iso_test(group_homology(double, zero_out), FGAbGroup.cyclic(2))
    zero = Homomorphism(Z1, Z1, [[0]])
    assert iso_test(group_homology(zero, zero), Z1)
    ident = Homomorphism(Z1, Z1, [[1]])
    assert group_homology(ident, zero).is_trivial()
    with pytest.raises(FGAbError):
        group_homology(ident, ident)
    # Z/4 -> Z/2 reduction is well defined, Z/2 -> Z/4 by 1 is not
    assert Homomorphism(FGAbGroup.cyclic(4), FGAbGroup.cyclic(2), [[1]]).check_well_defined()
    assert not Homomorphism(FGAbGroup.cyclic(2), FGAbGroup.cyclic(4), [[1]]).check_well_defined()


@st.composite
def unimodular(draw, n):
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(draw(st.integers(0, 6))):
        a, b = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if a != b:
            c = draw(st.integers(-3, 3))
            U[a] = [x + c * y for x, y in zip(U[a], U[b])]
    return U


@given(st.data())
def test_homology_invariant_under_re_presentation(data):
    # A --f--> B --g--> C with g f = 0 built as g = random, f = kernel columns times random
    nb = data.draw(st.integers(1, 5))
    G = data.draw(matrices(max_side=4).map(lambda M: [(r + [0] * nb)[:nb] for r in M]))
    K = integer_kernel(G)
    na = data.draw(st.integers(1, 3))
    coeffs = [data.draw(st.lists(st.integers(-3, 3), min_size=na, max_size=na)) for _ in K]
    F = [[sum(K[k][i] * coeffs[k][j] for k in range(len(K))) for j in range(na)] for i in range(nb)] if K else [[0] * na for _ in range(nb)]
    A, B, C = FGAbGroup.free(na), FGAbGroup.free(nb), FGAbGroup.free(len(G))
    H = group_homology(Homomorphism(A, B, F), Homomorphism(B, C, G))
    # change basis of B by U: f' = U f, g' = g U^-1
    U = data.draw(unimodular(nb))
    Uinv = [[int(x) for x in row] for row in sympy.Matrix(U).inv().tolist()]
    H2 = group_homology(Homomorphism(A, B, matmul(U, F)), Homomorphism(B, C, matmul(G, Uinv)))
    assert iso_test(H, H2)
    # oracle: rank of ker g minus rank im f, torsion from the SNF of f restricted into ker g
    free = nb - sympy.Matrix(G).rank() - sympy.Matrix(F).rank()
    assert H.free_rank == free


def test_subquotient():
    top = Lattice.span(2, [[1, 0], [0, 1]])
    bottom = Lattice.span(2, [[2, 0], [0, 4]])
    sq = Subquotient(top, bottom)
    sq.check()
    assert sq.group().invariants == [2, 4]
    with pytest.raises(FGAbError):
        Subquotient(bottom, top).check()


def test_invariant_factors_and_json():
    assert invariant_factors([[2, 4], [6, 8]]) == ([2, 4], 2)
    M = [[10**30, -1], [0, 7]]
    assert matrix_from_json(matrix_to_json(M)) == M
    assert matrix_to_json(M).startswith('[["1000000000000000000000000000000"')
