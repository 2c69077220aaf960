"""The truncated James construction, its filtration quotients, and the
second James-Hopf map built by combinatorial extension."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, List, Tuple

from .fgab import homology as group_homology
from .simplicial import (
    ChainComplexData,
    S1,
    S2,
    S2vS2,
    SimplicialMap,
    SimplicialSet,
    WordSet,
    chain_map_matrix,
    identity_surjection,
)

SPACES = {"s1": S1, "s2": S2, "s2vs2": S2vS2}

DEFAULT_CAP = 6
DEFAULT_LENGTH = 4


@dataclass(frozen=True)
class Word:
    """A reduced word of level-k simplices of X with at most ``bound`` letters."""

    letters: Tuple[tuple, ...]
    level: int
    bound: int

    def __post_init__(self):
        if len(self.letters) > self.bound:
            raise ValueError(f"{len(self.letters)} letters exceed the bound {self.bound}")
        if any(len(eta) != self.level + 1 for _, eta in self.letters):
            raise ValueError("every letter must be a simplex of the word's level")

    @classmethod
    def of(cls, J: "WordSet", s) -> "Word":
        return cls(tuple(J.letters_of(s)), len(s[1]) - 1, J.n)

    def __len__(self):
        return len(self.letters)


@lru_cache(maxsize=None)
def smash_power(X: SimplicialSet, r: int) -> WordSet:
    """``X^(smash r)``: r-tuples of nonbasepoint simplices, any basepoint entry collapsing the tuple."""
    if r == 1:
        return WordSet(X, 1, exact=True, name=X.name)
    return WordSet(X, r, exact=True, name=f"{X.name}^{r}")


@lru_cache(maxsize=None)
def james_truncated(X: SimplicialSet, n: int) -> WordSet:
    """``J_n(X)``: reduced words of length at most n."""
    return WordSet(X, n, exact=False)


@lru_cache(maxsize=None)
def dn_quotient(X: SimplicialSet, n: int) -> Tuple[WordSet, SimplicialMap]:
    """``D_n(X) = J_n(X) / J_(n-1)(X)`` together with the quotient map."""
    J = james_truncated(X, n)
    D = WordSet(X, n, exact=True, name=f"D{n}({X.name})")

    def q(key):
        k = J.dim_of(key)
        letters = J.word(key)
        if len(letters) == n:
            return (D.intern(letters), identity_surjection(k))
        return D.base_simplex(k)

    return D, SimplicialMap(J, D, q, name="quotient")


@lru_cache(maxsize=None)
def inclusion(X: SimplicialSet, m: int, n: int) -> SimplicialMap:
    """``J_m(X) -> J_n(X)`` for m <= n."""
    Jm, Jn = james_truncated(X, m), james_truncated(X, n)
    return SimplicialMap(Jm, Jn, lambda key: (Jn.intern(Jm.word(key)), identity_surjection(Jm.dim_of(key))), name="inclusion")


def two_subsets(m: int) -> List[Tuple[int, int]]:
    """Increasing pairs from ``1..m`` ordered by their larger entry, then smaller: (1,2),(1,3),(2,3),(1,4),..."""
    return [(a, b) for b in range(2, m + 1) for a in range(1, b)]


@lru_cache(maxsize=None)
def james_hopf_j2(X: SimplicialSet, n: int) -> SimplicialMap:
    """``j_2 : J_n(X) -> J_(C(n,2))(X smash X)``.

    A word ``x_1 ... x_m`` goes to the product of ``x_a smash x_b`` over the
    increasing pairs (a, b) in the order of :func:`two_subsets`.
    """
    if n < 2:
        raise ValueError("j_2 needs n >= 2")
    J = james_truncated(X, n)
    XX = smash_power(X, 2)
    target = WordSet(XX, comb(n, 2), exact=False, name=f"J{comb(n, 2)}({XX.name})")

    def on_key(key):
        k = J.dim_of(key)
        letters = J.word(key)
        pairs = [XX.normalize([letters[a - 1], letters[b - 1]], k) for a, b in two_subsets(len(letters))]
        return target.normalize(pairs, k)

    return SimplicialMap(J, target, on_key, name="j2")


def homology_table(space: str, n: int, cap: int):
    from .simplicial import homology

    X = SPACES[space]
    return homology(james_truncated(X, n), cap)


def j2_matches_quotient_on_chains(X: SimplicialSet, cap: int) -> bool:
    """On J_2(X), j_2 and the quotient to D_2(X) give the same chain map once
    ``D_2(X) = X smash X`` is read as the one-letter words of ``J_1(X smash X)``."""
    j2 = james_hopf_j2(X, 2)
    D, q = dn_quotient(X, 2)
    J, T = j2.source, j2.target
    XX = T.X
    for k in range(cap + 1):
        for key in J.nondegenerate(k):
            x = J.simplex(key)
            a = j2(x)
            b = q(x)
            if b[0] != D.base:
                # one-letter word whose letter is the nondegenerate pair D.word(b)
                if not T.is_nondegenerate(a) or len(T.word(a[0])) != 1:
                    return False
                (pair, eta), = T.word(a[0])
                if eta != identity_surjection(k) or XX.word(pair) != D.word(b[0]):
                    return False
            elif a[0] != T.base:
                return False
    return True


def les_exact(X: SimplicialSet, n: int, cap: int) -> Dict[str, bool]:
    """Exactness of ``H(J_(n-1)) -> H(J_n) -> H(J_n, J_(n-1)) -> H(J_(n-1))`` in degrees below cap.

    Relative chains are the words of length exactly n, which compute the
    reduced homology of ``D_n(X)``. Dense linear algebra; meant for small inputs.
    """
    Jn = james_truncated(X, n)
    Jm = james_truncated(X, n - 1)
    A = ChainComplexData(Jm, cap)
    B = ChainComplexData(Jn, cap)
    R = ChainComplexData(Jn, cap, keep=lambda key: len(Jn.word(key)) == n)
    inc = SimplicialMap(Jm, Jn, lambda key: (Jn.intern(Jm.word(key)), identity_surjection(Jm.dim_of(key))))
    out = {}
    HA = {k: A.subquotient(k) for k in range(cap + 1)}
    HB = {k: B.subquotient(k) for k in range(cap + 1)}
    HR = {k: R.subquotient(k) for k in range(cap + 1)}
    for k in range(cap):
        i_k = HA[k].induced(chain_map_matrix(inc, A, B, k), HB[k])
        # projection onto words of length n
        proj = [[int(bk == rk) for bk in B.bases[k]] for rk in R.bases[k]]
        p_k = HB[k].induced(proj, HR[k])
        # connecting map: lift a relative cycle, take its boundary, land in J_(n-1)
        dB = B.boundary(k)
        lift = [[int(bk == rk) for rk in R.bases[k]] for bk in B.bases[k]]
        conn = _restrict(_mul(dB, lift, len(R.bases[k])), B, A, k - 1) if k >= 1 else None
        if k >= 1:
            delta = HR[k].induced(conn, HA[k - 1])
            i_prev = HA[k - 1].induced(chain_map_matrix(inc, A, B, k - 1), HB[k - 1])
            out[f"H{k-1}(J{n-1})"] = group_homology(delta, i_prev).is_trivial()
            out[f"H{k}(rel)"] = group_homology(p_k, delta).is_trivial()
        out[f"H{k}(J{n})"] = group_homology(i_k, p_k).is_trivial()
    return out


def _mul(A, B, ncols):
    if not A:
        return []
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] if B else [0] * ncols for row in A]


def _restrict(M, B: ChainComplexData, A: ChainComplexData, k: int):
    """Rows of M indexed by the basis of B in degree k, restricted to the subcomplex A."""
    rows = {key: r for key, r in zip(B.bases[k], M)}
    ncols = len(M[0]) if M else 0
    return [rows.get(key, [0] * ncols) for key in A.bases[k]]
