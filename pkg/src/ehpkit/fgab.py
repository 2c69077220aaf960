"""Exact integer linear algebra: Smith and Hermite forms, lattices in Z^n,
finitely generated abelian groups by presentation, and homology.

Matrices are lists of rows of Python ints. A group ``Z^g / R`` is given by
its relation rows ``R``; a homomorphism ``Z^a/R_A -> Z^b/R_B`` by a ``b x a``
matrix whose column ``j`` is the image of generator ``j``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

Matrix = List[List[int]]


class FGAbError(ValueError):
    pass


# -- small matrix helpers ----------------------------------------------------

def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def transpose(M: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], inner: Optional[int] = None) -> Matrix:
    if not A:
        return []
    n = len(B[0]) if B else 0
    Bt = transpose(B) if B else [[] for _ in range(n)]
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(M: Sequence[Sequence[int]], v: Sequence[int]) -> List[int]:
    return [sum(a * b for a, b in zip(row, v)) for row in M]


def vecmat(v: Sequence[int], M: Sequence[Sequence[int]], ncols: int) -> List[int]:
    out = [0] * ncols
    for c, row in zip(v, M):
        if c:
            for j, x in enumerate(row):
                if x:
                    out[j] += c * x
    return out


def is_zero_matrix(M) -> bool:
    return all(x == 0 for row in M for x in row)


def matrix_to_json(M: Sequence[Sequence[int]]) -> str:
    """Array of rows of decimal strings."""
    return json.dumps([[str(x) for x in row] for row in M])


def matrix_from_json(text: str) -> Matrix:
    data = json.loads(text)
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise FGAbError("expected an array of rows")
    rows = [[int(x) for x in r] for r in data]
    if rows and len({len(r) for r in rows}) != 1:
        raise FGAbError("ragged matrix")
    return rows


# -- Smith normal form -------------------------------------------------------

def smith_normal_form(M: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix, Matrix]:
    """Return ``(S, U, V)`` with ``S = U M V``, U and V unimodular, S diagonal
    with ``S[0][0] | S[1][1] | ...`` and nonnegative diagonal.

    Pivots are chosen with least absolute value to keep entries small.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    S = [list(r) for r in M]
    U = identity(m)
    V = identity(n)

    def swap_rows(a, b):
        S[a], S[b] = S[b], S[a]
        U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        for row in S:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]

    def add_row(dst, src, c):  # row dst += c * row src
        if c:
            S[dst] = [x + c * y for x, y in zip(S[dst], S[src])]
            U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        if c:
            for row in S:
                row[dst] += c * row[src]
            for row in V:
                row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = S[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
                    if S[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
                    if S[t][j]:
                        dirty = True
            if dirty:
                # move the smallest remainder in row/column t to the pivot
                cands = [(abs(S[i][t]), i, t) for i in range(t + 1, m) if S[i][t]]
                cands += [(abs(S[t][j]), t, j) for j in range(t + 1, n) if S[t][j]]
                _, i, j = min(cands)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return S, U, V


def smith_diagonal(M: Sequence[Sequence[int]]) -> List[int]:
    """Nonzero diagonal of the Smith form (no transforms kept)."""
    return sparse_smith_diagonal(M) if M else []


def invariant_factors(M: Sequence[Sequence[int]]) -> Tuple[List[int], int]:
    """(nontrivial invariant factors, rank) of the relation matrix M."""
    diag = smith_diagonal(M)
    return [d for d in diag if d > 1], len(diag)


# -- sparse elimination for large boundary matrices -----------------------------

def sparse_smith_diagonal(M) -> List[int]:
    """Nonzero Smith invariants of a (possibly large, sparse) integer matrix.

    ``M`` is either a list of rows or a dict ``{row: {col: value}}``. Unit
    pivots are eliminated sparsely; whatever survives is handed to the dense
    algorithm.
    """
    if isinstance(M, dict):
        rows = {r: {c: v for c, v in cols.items() if v} for r, cols in M.items()}
    else:
        rows = {r: {c: v for c, v in enumerate(row) if v} for r, row in enumerate(M)}
    rows = {r: d for r, d in rows.items() if d}
    cols: Dict[int, set] = {}
    for r, d in rows.items():
        for c in d:
            cols.setdefault(c, set()).add(r)
    units = 0
    progress = True
    while progress:
        progress = False
        # one pass over the surviving rows, shortest first; repeat while pivots appear
        for r in sorted(rows, key=lambda r: len(rows[r])):
            d = rows.get(r)
            if d is None:
                continue
            best = None
            for c, v in d.items():
                if v == 1 or v == -1:
                    w = len(cols[c])
                    if best is None or w < best[1]:
                        best = (c, w)
            if best is None:
                continue
            c = best[0]
            prow = rows.pop(r)
            v = prow[c]
            for c2 in prow:
                cols[c2].discard(r)
            for r2 in list(cols[c]):
                d2 = rows[r2]
                f = d2[c] * v  # v = +-1, so v^-1 = v
                for c2, x in prow.items():
                    nv = d2.get(c2, 0) - f * x
                    if nv:
                        if c2 not in d2:
                            cols[c2].add(r2)
                        d2[c2] = nv
                    elif c2 in d2:
                        del d2[c2]
                        cols[c2].discard(r2)
                if not d2:
                    del rows[r2]
            del cols[c]
            units += 1
            progress = True
    if not rows:
        return [1] * units
    rest_cols = sorted({c for d in rows.values() for c in d})
    index = {c: k for k, c in enumerate(rest_cols)}
    dense = [[0] * len(rest_cols) for _ in rows]
    for k, d in enumerate(rows.values()):
        for c, x in d.items():
            dense[k][index[c]] = x
    S, _, _ = smith_normal_form(dense)
    diag = [S[i][i] for i in range(min(len(S), len(rest_cols))) if S[i][i]]
    return [1] * units + diag


# -- fraction-free elimination ------------------------------------------------

def bareiss(M: Sequence[Sequence[int]]) -> Tuple[int, int]:
    """(rank, determinant) by fraction-free elimination; determinant is 0 unless square and full rank."""
    A = [list(r) for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    prev = 1
    rank = 0
    sgn = 1
    col = 0
    while rank < m and col < n:
        piv = next((i for i in range(rank, m) if A[i][col]), None)
        if piv is None:
            col += 1
            continue
        if piv != rank:
            A[rank], A[piv] = A[piv], A[rank]
            sgn = -sgn
        p = A[rank][col]
        for i in range(rank + 1, m):
            for j in range(col + 1, n):
                A[i][j] = (A[i][j] * p - A[i][col] * A[rank][j]) // prev
            A[i][col] = 0
        prev = p
        rank += 1
        col += 1
    det = sgn * prev if (m == n and rank == n and n) else (1 if m == n == 0 else 0)
    return rank, det


def rational_rank(M: Sequence[Sequence[int]]) -> int:
    return bareiss(M)[0]


def determinant(M: Sequence[Sequence[int]]) -> int:
    if any(len(r) != len(M) for r in M):
        raise FGAbError("determinant of a non-square matrix")
    return bareiss(M)[1]


# -- Hermite form and lattices ------------------------------------------------

def hermite_rows(rows: Sequence[Sequence[int]], n: int) -> Matrix:
    """Row Hermite normal form: a basis of the row lattice in echelon form,
    positive pivots, entries above each pivot reduced into ``[0, pivot)``."""
    A = [list(r) for r in rows if any(r)]
    out: Matrix = []
    pivots: List[int] = []
    col = 0
    while A and col < n:
        nz = [r for r in A if r[col]]
        if not nz:
            col += 1
            continue
        rest = [r for r in A if not r[col]]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            nxt = [p]
            for r in nz[1:]:
                q = r[col] // p[col]
                r = [x - q * y for x, y in zip(r, p)]
                (nxt if r[col] else rest).append(r)
            nz = nxt
        p = nz[0]
        if p[col] < 0:
            p = [-x for x in p]
        for k, prow in enumerate(out):
            q = prow[col] // p[col]
            if q:
                out[k] = [x - q * y for x, y in zip(prow, p)]
        out.append(p)
        pivots.append(col)
        A = [r for r in rest if any(r)]
        col += 1
    return out


def _pivot_col(row: Sequence[int]) -> int:
    return next(i for i, x in enumerate(row) if x)


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^n, kept as a Hermite basis."""

    n: int
    basis: Tuple[Tuple[int, ...], ...]

    @classmethod
    def span(cls, n: int, gens: Sequence[Sequence[int]]) -> "Lattice":
        for g in gens:
            if len(g) != n:
                raise FGAbError(f"vector of length {len(g)} in Z^{n}")
        return cls(n, tuple(tuple(r) for r in hermite_rows(gens, n)))

    @classmethod
    def full(cls, n: int) -> "Lattice":
        return cls(n, tuple(tuple(r) for r in identity(n)))

    @classmethod
    def zero(cls, n: int) -> "Lattice":
        return cls(n, ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, v: Sequence[int]) -> Optional[List[int]]:
        """Integer coefficients of v in the basis, or None if v is not in the lattice."""
        v = list(v)
        coeffs = []
        for row in self.basis:
            c = _pivot_col(row)
            if v[c] % row[c]:
                return None
            q = v[c] // row[c]
            coeffs.append(q)
            if q:
                v = [x - q * y for x, y in zip(v, row)]
        return coeffs if not any(v) else None

    def contains(self, v: Sequence[int]) -> bool:
        return self.coordinates(v) is not None

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(r) for r in other.basis)

    def __add__(self, other: "Lattice") -> "Lattice":
        return Lattice.span(self.n, list(self.basis) + list(other.basis))

    def intersect(self, other: "Lattice") -> "Lattice":
        if not self.basis or not other.basis:
            return Lattice.zero(self.n)
        stacked = [list(r) for r in self.basis] + [[-x for x in r] for r in other.basis]
        ker = integer_kernel(transpose(stacked))
        k = len(self.basis)
        gens = [vecmat(vec[:k], self.basis, self.n) for vec in ker]
        return Lattice.span(self.n, gens)

    def image(self, phi: Sequence[Sequence[int]], m: int) -> "Lattice":
        """Image under the ``m x n`` matrix phi acting on column vectors."""
        return Lattice.span(m, [matvec(phi, r) for r in self.basis])

    def preimage(self, phi: Sequence[Sequence[int]], src: int) -> "Lattice":
        """``{x in Z^src : phi x in self}``."""
        if not phi:
            return Lattice.full(src)
        k = len(self.basis)
        block = [list(row) + [-self.basis[j][i] for j in range(k)] for i, row in enumerate(phi)]
        ker = integer_kernel(block)
        return Lattice.span(src, [v[:src] for v in ker])

    def __eq__(self, other):
        return isinstance(other, Lattice) and (self.n, self.basis) == (other.n, other.basis)

    def __hash__(self):
        return hash((self.n, self.basis))


def integer_kernel(M: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Basis (as rows) of ``{x : M x = 0}``, in Hermite form."""
    n = len(M[0]) if M else (ncols or 0)
    if not M or is_zero_matrix(M):
        return identity(n)
    # Hermite form of [M^T | I]: rows whose M^T part vanishes span the kernel
    aug = [list(col) + e for col, e in zip(transpose(M), identity(n))]
    m = len(M)
    H = hermite_rows(aug, m + n)
    return hermite_rows([r[m:] for r in H if not any(r[:m])], n)


# -- groups ------------------------------------------------------------------

@dataclass
class FGAbGroup:
    """``Z^ngens / rowspan(relations)`` with cached Smith data."""

    ngens: int
    relations: Tuple[Tuple[int, ...], ...] = ()
    _snf: Optional[tuple] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        rels = tuple(tuple(int(x) for x in r) for r in self.relations)
        if any(len(r) != self.ngens for r in rels):
            raise FGAbError(f"relations must have {self.ngens} columns")
        self.relations = tuple(r for r in rels if any(r))

    @classmethod
    def free(cls, rank: int) -> "FGAbGroup":
        return cls(rank)

    @classmethod
    def cyclic(cls, order: int) -> "FGAbGroup":
        return cls(1, ((order,),))

    @classmethod
    def from_invariants(cls, torsion: Sequence[int], free_rank: int = 0) -> "FGAbGroup":
        g = len(torsion) + free_rank
        rels = [[d if j == i else 0 for j in range(g)] for i, d in enumerate(torsion)]
        return cls(g, tuple(map(tuple, rels)))

    def _smith(self):
        if self._snf is None:
            S, _, V = smith_normal_form([list(r) for r in self.relations]) if self.relations else ([], None, identity(self.ngens))
            diag = [S[i][i] for i in range(min(len(S), self.ngens)) if S[i][i]]
            self._snf = (diag, V)
        return self._snf

    @property
    def invariants(self) -> List[int]:
        return [d for d in self._smith()[0] if d > 1]

    @property
    def free_rank(self) -> int:
        return self.ngens - len(self._smith()[0])

    def canonical(self) -> Tuple[Tuple[int, ...], int]:
        return tuple(self.invariants), self.free_rank

    def is_trivial(self) -> bool:
        return not self.invariants and self.free_rank == 0

    def order(self) -> Optional[int]:
        if self.free_rank:
            return None
        out = 1
        for d in self.invariants:
            out *= d
        return out

    def canonical_coords(self, x: Sequence[int]) -> Tuple[int, ...]:
        """Coordinates of the class of x in ``Z/d_1 + ... + Z/d_k + Z^f``."""
        diag, V = self._smith()
        y = vecmat(x, V, self.ngens)
        out = [y[i] % d for i, d in enumerate(diag) if d > 1]
        return tuple(out + y[len(diag):])

    def is_zero_element(self, x: Sequence[int]) -> bool:
        return not any(self.canonical_coords(x))

    def relation_lattice(self) -> Lattice:
        return Lattice.span(self.ngens, self.relations)

    def __str__(self):
        parts = [f"Z/{d}" for d in self.invariants] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"invariants": self.invariants, "rank": self.free_rank}


def iso_test(A: FGAbGroup, B: FGAbGroup) -> bool:
    return A.canonical() == B.canonical()


@dataclass
class Homomorphism:
    source: FGAbGroup
    target: FGAbGroup
    matrix: Matrix

    def __post_init__(self):
        self.matrix = [list(map(int, r)) for r in self.matrix] if self.matrix else [[] for _ in range(self.target.ngens)]
        if self.target.ngens and (len(self.matrix) != self.target.ngens or any(len(r) != self.source.ngens for r in self.matrix)):
            raise FGAbError("matrix shape must be target.ngens x source.ngens")

    def check_well_defined(self) -> bool:
        rel = self.target.relation_lattice()
        return all(rel.contains(matvec(self.matrix, r)) for r in self.source.relations)

    def apply(self, x: Sequence[int]) -> List[int]:
        return matvec(self.matrix, x) if self.target.ngens else []

    def compose(self, other: "Homomorphism") -> "Homomorphism":
        """self after other."""
        if self.source.ngens != other.target.ngens:
            raise FGAbError("composition of incompatible maps")
        if not self.target.ngens:
            return Homomorphism(other.source, self.target, [])
        M = [[sum(self.matrix[i][k] * other.matrix[k][j] for k in range(self.source.ngens))
              for j in range(other.source.ngens)] for i in range(self.target.ngens)]
        return Homomorphism(other.source, self.target, M)

    def is_zero(self) -> bool:
        return all(self.target.is_zero_element(self.apply(e)) for e in identity(self.source.ngens))

    def kernel_lattice(self) -> Lattice:
        """Generators x with h(x) = 0 in the target."""
        if not self.target.ngens:
            return Lattice.full(self.source.ngens)
        return self.target.relation_lattice().preimage(self.matrix, self.source.ngens)

    def image_lattice(self) -> Lattice:
        return Lattice.full(self.source.ngens).image(self.matrix, self.target.ngens)

    def kernel(self) -> FGAbGroup:
        return Subquotient(self.kernel_lattice(), self.source.relation_lattice()).group()

    def cokernel(self) -> FGAbGroup:
        return Subquotient(Lattice.full(self.target.ngens), self.image_lattice() + self.target.relation_lattice()).group()

    def image(self) -> FGAbGroup:
        return Subquotient(self.image_lattice() + self.target.relation_lattice(), self.target.relation_lattice()).group()


def map_is_injective(h: Homomorphism) -> bool:
    return h.source.relation_lattice().contains_lattice(h.kernel_lattice())


def map_is_surjective(h: Homomorphism) -> bool:
    return h.cokernel().is_trivial()


def homology(f: Homomorphism, g: Homomorphism) -> FGAbGroup:
    """ker g / im f for ``A --f--> B --g--> C`` with ``g f = 0``."""
    if f.target.ngens != g.source.ngens:
        raise FGAbError("target(f) must equal source(g)")
    if not g.compose(f).is_zero():
        raise FGAbError("g o f is not zero")
    B = f.target.relation_lattice()
    return Subquotient(g.kernel_lattice() + B, f.image_lattice() + B).group()


@dataclass
class Subquotient:
    """``Z / N`` for lattices ``N <= Z`` in a common Z^n; generators are the basis of Z."""

    top: Lattice
    bottom: Lattice
    _group: Optional[FGAbGroup] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.top.n != self.bottom.n:
            raise FGAbError("lattices live in different ambient groups")

    def check(self):
        if not self.top.contains_lattice(self.bottom):
            raise FGAbError("bottom lattice is not contained in top")

    def coords(self, v: Sequence[int]) -> List[int]:
        c = self.top.coordinates(v)
        if c is None:
            raise FGAbError(f"{list(v)} does not lie in the top lattice")
        return c

    def group(self) -> FGAbGroup:
        if self._group is None:
            rels = tuple(tuple(self.coords(r)) for r in self.bottom.basis)
            self._group = FGAbGroup(self.top.rank, rels)
        return self._group

    def induced(self, phi: Sequence[Sequence[int]], target: "Subquotient") -> Homomorphism:
        """Map induced by an ambient matrix phi (target.n x self.n)."""
        cols = [target.coords(matvec(phi, z)) for z in self.top.basis]
        return Homomorphism(self.group(), target.group(), transpose(cols, self.top.rank) if cols else zeros(target.top.rank, 0))
