"""Finite pointed simplicial sets with a dimension cap.

Every simplex is a pair ``(x, eta)``: a nondegenerate simplex ``x`` of
dimension m and a monotone surjection ``eta: [k] -> [m]`` stored as its value
tuple. The simplex is nondegenerate exactly when ``eta`` is the identity, and
it lies in the image of ``s_j`` exactly when ``eta(j) = eta(j+1)``. Faces of
degenerate simplices reduce to faces of nondegenerate ones, so a set is fully
described by its nondegenerate simplices and their faces.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Hashable, Iterator, List, Optional, Sequence, Tuple

from .fgab import FGAbGroup, Homomorphism, Lattice, Subquotient, integer_kernel, sparse_smith_diagonal

Key = Hashable
Surjection = Tuple[int, ...]
Simplex = Tuple[Key, Surjection]


# -- monotone surjections ------------------------------------------------------

@lru_cache(maxsize=None)
def identity_surjection(k: int) -> Surjection:
    return tuple(range(k + 1))


@lru_cache(maxsize=None)
def constant_surjection(k: int) -> Surjection:
    return (0,) * (k + 1)


def collapse_set(eta: Surjection) -> frozenset:
    """Indices j with ``eta(j) = eta(j+1)``; the simplex is ``s_j`` of something iff j is here."""
    return frozenset(j for j in range(len(eta) - 1) if eta[j] == eta[j + 1])


@lru_cache(maxsize=None)
def collapse_mask(eta: Surjection) -> int:
    m = 0
    for j in range(len(eta) - 1):
        if eta[j] == eta[j + 1]:
            m |= 1 << j
    return m


def surjection_from_mask(k: int, mask: int) -> Surjection:
    """The surjection on ``[k]`` collapsing exactly the pairs ``(j, j+1)`` with bit j set."""
    out = [0]
    for j in range(k):
        out.append(out[-1] + (0 if mask >> j & 1 else 1))
    return tuple(out)


def degeneracy_word(eta: Surjection) -> Tuple[int, ...]:
    """Decreasing index word ``(j_1 > j_2 > ...)`` with ``(x, eta) = s_(j_1) s_(j_2) ... x``."""
    return tuple(sorted(collapse_set(eta), reverse=True))


def _factor(eta: Surjection, mask: int, k: int) -> Surjection:
    """The surjection eta'' with ``eta = eta'' o c`` where c collapses the bits of mask."""
    out = []
    for j in range(k + 1):
        if j == 0 or not (mask >> (j - 1) & 1):
            out.append(eta[j])
    return tuple(out)


_FACE_PLANS: Dict[Tuple[Surjection, int], Tuple[int, Surjection]] = {}
_COMPOSE: Dict[Tuple[Surjection, Surjection], Surjection] = {}


def _face_plan(eta: Surjection, i: int) -> Tuple[int, Surjection]:
    """How ``d_i`` acts on ``(x, eta)``: ``(-1, eta o delta_i)`` when that is still
    onto, else ``(c, f)`` with ``eta o delta_i = delta_c o f``."""
    k = len(eta) - 1
    if not 0 <= i <= k or k == 0:
        raise ValueError(f"no face d_{i} of a {k}-simplex")
    f = eta[:i] + eta[i + 1:]
    c = eta[i]
    if (i > 0 and eta[i - 1] == c) or (i < k and eta[i + 1] == c):
        plan = (-1, f)
    else:
        plan = (c, tuple(v - 1 if v > c else v for v in f))
    _FACE_PLANS[(eta, i)] = plan
    return plan


def _compose(zeta: Surjection, f: Surjection) -> Surjection:
    hit = _COMPOSE.get((zeta, f))
    if hit is None:
        hit = tuple(zeta[v] for v in f)
        _COMPOSE[(zeta, f)] = hit
    return hit


# -- simplicial sets -----------------------------------------------------------

class SimplicialSet:
    """Abstract pointed simplicial set; subclasses supply nondegenerate simplices and their faces."""

    name = "X"
    base: Key = None

    def __init__(self):
        self._faces: Dict[Tuple[Key, int], Simplex] = {}
        self._nondeg: Dict[int, List[Key]] = {}

    # subclass hooks
    def _enumerate(self, k: int) -> List[Key]:
        raise NotImplementedError

    def _face_nd(self, key: Key, i: int) -> Simplex:
        raise NotImplementedError

    def dim_of(self, key: Key) -> int:
        raise NotImplementedError

    @property
    def max_dim(self) -> Optional[int]:
        """Largest dimension of a nondegenerate simplex, if known."""
        return None

    # public interface
    def nondegenerate(self, k: int) -> List[Key]:
        if k < 0:
            return []
        if self.max_dim is not None and k > self.max_dim:
            return []
        if k not in self._nondeg:
            self._nondeg[k] = self._enumerate(k)
        return self._nondeg[k]

    def count(self, k: int) -> int:
        return len(self.nondegenerate(k))

    def base_simplex(self, k: int) -> Simplex:
        return (self.base, constant_surjection(k))

    def is_base(self, s: Simplex) -> bool:
        return s[0] == self.base

    def face_nd(self, key: Key, i: int) -> Simplex:
        hit = self._faces.get((key, i))
        if hit is None:
            k = self.dim_of(key)
            if not 0 <= i <= k or k == 0:
                raise ValueError(f"no face d_{i} of a {k}-simplex")
            hit = self._face_nd(key, i)
            self._faces[(key, i)] = hit
        return hit

    def face(self, s: Simplex, i: int) -> Simplex:
        x, eta = s
        plan = _FACE_PLANS.get((eta, i))
        if plan is None:
            plan = _face_plan(eta, i)
        c, f = plan
        if c < 0:
            return (x, f)
        hit = self._faces.get((x, c))
        if hit is None:
            hit = self.face_nd(x, c)
        y, zeta = hit
        return (y, _compose(zeta, f))

    def degeneracy(self, s: Simplex, j: int) -> Simplex:
        x, eta = s
        k = len(eta) - 1
        if not 0 <= j <= k:
            raise ValueError(f"no degeneracy s_{j} of a {k}-simplex")
        return (x, eta[: j + 1] + eta[j:])

    def simplex(self, key: Key) -> Simplex:
        return (key, identity_surjection(self.dim_of(key)))

    def is_nondegenerate(self, s: Simplex) -> bool:
        return len(set(s[1])) == len(s[1])

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class CellSet(SimplicialSet):
    """A simplicial set given by an explicit table of nondegenerate simplices and faces."""

    def __init__(self, name: str, cells: Dict[int, List[Key]], faces: Dict[Tuple[Key, int], Simplex], base: Key):
        super().__init__()
        self.name = name
        self.base = base
        self._cells = {k: list(v) for k, v in cells.items()}
        self._dims = {key: k for k, keys in self._cells.items() for key in keys}
        self._table = dict(faces)
        if self._dims.get(base) != 0:
            raise ValueError("the basepoint must be a 0-simplex")

    def _enumerate(self, k):
        return list(self._cells.get(k, []))

    def _face_nd(self, key, i):
        return self._table[(key, i)]

    def dim_of(self, key):
        return self._dims[key]

    @property
    def max_dim(self):
        return max(self._cells)


def sphere(n: int) -> CellSet:
    """``Delta^n / boundary``: one vertex and one n-simplex."""
    if n < 1:
        raise ValueError("sphere dimension must be positive")
    faces = {("s", i): ("*", constant_surjection(n - 1)) for i in range(n + 1)}
    return CellSet(f"S{n}", {0: ["*"], n: ["s"]}, faces, "*")


def wedge_of_spheres(n: int, labels: Sequence[str] = ("a", "b")) -> CellSet:
    faces = {(lab, i): ("*", constant_surjection(n - 1)) for lab in labels for i in range(n + 1)}
    return CellSet(f"S{n}v" * (len(labels) - 1) + f"S{n}", {0: ["*"], n: list(labels)}, faces, "*")


def point() -> CellSet:
    return CellSet("pt", {0: ["*"]}, {}, "*")


S1 = sphere(1)
S2 = sphere(2)
S2vS2 = wedge_of_spheres(2)
POINT = point()


class WordSet(SimplicialSet):
    """Words in the nonbasepoint simplices of X, acted on letterwise.

    ``exact=False`` gives the truncated free monoid ``J_n(X)``: words of
    length at most n, basepoint letters deleted after each face. With
    ``exact=True`` only words of length exactly n survive and everything
    shorter is the basepoint, which is ``X^(smash n)`` and also ``D_n(X)``.
    Keys are tuples of letters; the empty tuple is the basepoint.
    """

    def __init__(self, X: SimplicialSet, n: int, exact: bool, name: Optional[str] = None):
        super().__init__()
        if n < 1:
            raise ValueError("word length bound must be positive")
        self.X = X
        self.n = n
        self.exact = exact
        self.name = name or (f"{X.name}^{n}" if exact else f"J{n}({X.name})")
        # words are interned: keys are ints, 0 is the empty word
        self._ids: Dict[tuple, int] = {}
        self._words: List[tuple] = []
        self._dims: List[int] = []
        self.base = self.intern((), 0)

    def intern(self, letters: tuple, k: Optional[int] = None) -> int:
        key = self._ids.get(letters)
        if key is None:
            key = len(self._words)
            self._ids[letters] = key
            self._words.append(letters)
            self._dims.append(len(letters[0][1]) - 1 if letters else (k or 0))
        return key

    def word(self, key: int) -> tuple:
        """The letters of a nondegenerate word, each a simplex of X."""
        return self._words[key]

    def key_of(self, letters: Sequence[Simplex]) -> Optional[int]:
        return self._ids.get(tuple(letters))

    def dim_of(self, key):
        return self._dims[key]

    @property
    def max_dim(self):
        return None if self.X.max_dim is None else self.n * self.X.max_dim

    def _letter_options(self, k: int):
        full = (1 << k) - 1
        opts = []
        for m in range(0, k + 1):
            for x in self.X.nondegenerate(m):
                if x == self.X.base:
                    continue
                # surjections [k] -> [m] are the masks with k - m collapsed bits
                for mask in _masks(k, k - m):
                    opts.append(((x, surjection_from_mask(k, mask)), full & ~mask, m))
        return opts

    def _enumerate(self, k):
        full = (1 << k) - 1
        opts = self._letter_options(k)
        best = max((m for _, _, m in opts), default=0)
        out: List[Key] = [self.base] if k == 0 else []
        lengths = [self.n] if self.exact else range(1, self.n + 1)
        for L in lengths:
            if L * best < k:
                continue
            word: List[Simplex] = []

            def rec(covered: int, left: int):
                if left == 0:
                    if covered == full:
                        out.append(self.intern(tuple(word)))
                    return
                missing = bin(full & ~covered).count("1")
                if missing > left * best:
                    return
                for letter, cover, _ in opts:
                    word.append(letter)
                    rec(covered | cover, left - 1)
                    word.pop()

            rec(0, L)
        return out

    def normalize(self, letters: Sequence[Simplex], k: int) -> Simplex:
        """Reduce a word of k-simplices to ``(nondegenerate word key, eta)``."""
        xb = self.X.base
        letters = [s for s in letters if s[0] != xb]
        if not letters or (self.exact and len(letters) < self.n):
            return (self.base, constant_surjection(k))
        if len(letters) > self.n:
            raise ValueError(f"word of length {len(letters)} exceeds the bound {self.n}")
        common = (1 << k) - 1
        for _, eta in letters:
            common &= collapse_mask(eta)
        if not common:
            return (self.intern(tuple(letters)), identity_surjection(k))
        outer = surjection_from_mask(k, common)
        return (self.intern(tuple((x, _factor(eta, common, k)) for x, eta in letters)), outer)

    def _face_nd(self, key, i):
        k = self.dim_of(key)
        face = self.X.face
        return self.normalize([face(s, i) for s in self._words[key]], k - 1)

    def letters_of(self, s: Simplex) -> List[Simplex]:
        """Letters of a (possibly degenerate) simplex, each as a simplex of X."""
        key, eta = s
        return [(x, _compose(inner, eta)) for x, inner in self._words[key]]


def _masks(k: int, bits: int) -> Iterator[int]:
    from itertools import combinations

    for combo in combinations(range(k), bits):
        m = 0
        for j in combo:
            m |= 1 << j
        yield m


# -- maps ------------------------------------------------------------------------

class SimplicialMap:
    """A map given on nondegenerate simplices and extended to degenerate ones."""

    def __init__(self, source: SimplicialSet, target: SimplicialSet, on_nondegenerate: Callable[[Key], Simplex], name: str = "f"):
        self.source = source
        self.target = target
        self._fn = on_nondegenerate
        self._cache: Dict[Key, Simplex] = {}
        self.name = name

    def on_key(self, key: Key) -> Simplex:
        hit = self._cache.get(key)
        if hit is None:
            hit = self._fn(key)
            self._cache[key] = hit
        return hit

    def __call__(self, s: Simplex) -> Simplex:
        x, eta = s
        y, zeta = self.on_key(x)
        return (y, tuple(zeta[v] for v in eta))


# -- simplicial identities --------------------------------------------------------

@dataclass
class IdentityReport:
    checked: int
    failures: List[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def check_simplicial_identities(X: SimplicialSet, cap: int, limit: int = 20) -> IdentityReport:
    """Check all face/degeneracy relations on every nondegenerate simplex of dimension at most cap,
    and on every single degeneracy of those that stays within the cap."""
    fails: List[str] = []
    checked = 0

    def note(msg):
        if len(fails) < limit:
            fails.append(msg)

    face, degen = X.face, X.degeneracy
    for k in range(cap + 1):
        for key in X.nondegenerate(k):
            x = X.simplex(key)
            fx = [face(x, i) for i in range(k + 1)] if k else []
            if k >= 2:
                for j in range(k + 1):
                    for i in range(j):
                        checked += 1
                        if face(fx[j], i) != face(fx[i], j - 1):
                            note(f"d{i} d{j} != d{j - 1} d{i} on {key}")
            if k + 1 <= cap:
                for j in range(k + 1):
                    sx = degen(x, j)
                    for i in range(k + 2):
                        checked += 1
                        if i < j:
                            rhs = degen(fx[i], j - 1)
                        elif i == j or i == j + 1:
                            rhs = x
                        else:
                            rhs = degen(fx[i - 1], j)
                        if face(sx, i) != rhs:
                            note(f"d{i} s{j} relation fails on {key}")
            if k + 2 <= cap:
                for j in range(k + 1):
                    sj = degen(x, j)
                    for i in range(j + 1):
                        checked += 1
                        if degen(sj, i) != degen(degen(x, i), j + 1):
                            note(f"s{i} s{j} relation fails on {key}")
    for k in range(1, cap + 1):
        b = X.base_simplex(k)
        for i in range(k + 1):
            checked += 1
            if X.face(b, i) != X.base_simplex(k - 1):
                note(f"face d{i} of the basepoint in dimension {k}")
    return IdentityReport(checked, fails)


def check_simplicial_map(f: SimplicialMap, cap: int, limit: int = 20) -> IdentityReport:
    """f commutes with faces and degeneracies and preserves the basepoint, up to the cap."""
    X, Y = f.source, f.target
    fails: List[str] = []
    checked = 0
    if f(X.base_simplex(0)) != Y.base_simplex(0):
        fails.append("basepoint not preserved")
    for k in range(cap + 1):
        for key in X.nondegenerate(k):
            x = X.simplex(key)
            fx = f(x)
            if len(fx[1]) != k + 1:
                fails.append(f"dimension changes on {key}")
                continue
            for i in range(k + 1 if k else 0):
                checked += 1
                if f(X.face(x, i)) != Y.face(fx, i):
                    if len(fails) < limit:
                        fails.append(f"d{i} not preserved on {key}")
            if k + 1 <= cap:
                for j in range(k + 1):
                    checked += 1
                    if f(X.degeneracy(x, j)) != Y.degeneracy(fx, j):
                        if len(fails) < limit:
                            fails.append(f"s{j} not preserved on {key}")
    return IdentityReport(checked, fails)


# -- chains and homology -----------------------------------------------------------

def boundary_columns(X: SimplicialSet, k: int) -> List[Dict[int, int]]:
    """Sparse columns of the normalized boundary ``C_k -> C_(k-1)``."""
    if k <= 0:
        return [{} for _ in X.nondegenerate(k)]
    index = {key: a for a, key in enumerate(X.nondegenerate(k - 1))}
    cols = []
    for key in X.nondegenerate(k):
        col: Dict[int, int] = {}
        x = X.simplex(key)
        for i in range(k + 1):
            y = X.face(x, i)
            if X.is_nondegenerate(y):
                a = index[y[0]]
                v = col.get(a, 0) + (-1 if i % 2 else 1)
                if v:
                    col[a] = v
                else:
                    del col[a]
        cols.append(col)
    return cols


def boundary_matrix(X: SimplicialSet, k: int) -> List[List[int]]:
    rows = X.count(k - 1) if k > 0 else 0
    cols = boundary_columns(X, k)
    M = [[0] * len(cols) for _ in range(rows)]
    for b, col in enumerate(cols):
        for a, v in col.items():
            M[a][b] = v
    return M


@dataclass
class HomologyResult:
    groups: List[FGAbGroup]
    reliable_through: int
    counts: List[int]

    def __getitem__(self, d):
        return self.groups[d]

    def __len__(self):
        return len(self.groups)

    def to_json(self) -> dict:
        return {
            "degrees": [
                {"d": d, "invariants": g.invariants, "rank": g.free_rank, "reliable": d <= self.reliable_through}
                for d, g in enumerate(self.groups)
            ]
        }


def _rank_and_torsion(cols: List[Dict[int, int]]) -> Tuple[int, List[int]]:
    rows: Dict[int, Dict[int, int]] = {}
    for b, col in enumerate(cols):
        for a, v in col.items():
            rows.setdefault(a, {})[b] = v
    diag = sparse_smith_diagonal(rows)
    return len(diag), [d for d in diag if d > 1]


def homology(X: SimplicialSet, cap: int) -> HomologyResult:
    """Integral homology of the normalized chains in degrees 0..cap.

    Degree ``cap`` needs chains one degree higher; it is marked unreliable
    unless X has no nondegenerate simplices above the cap.
    """
    ranks = {}
    torsion = {}
    for k in range(cap + 2):
        if k == cap + 1 and (X.max_dim is None or X.max_dim > cap):
            ranks[k], torsion[k] = 0, []
            continue
        ranks[k], torsion[k] = _rank_and_torsion(boundary_columns(X, k)) if k > 0 else (0, [])
    groups = []
    counts = []
    for k in range(cap + 1):
        n_k = X.count(k)
        counts.append(n_k)
        free = n_k - ranks[k] - ranks[k + 1]
        groups.append(FGAbGroup.from_invariants(torsion[k + 1], free))
    complete = X.max_dim is not None and X.max_dim <= cap
    return HomologyResult(groups, cap if complete else cap - 1, counts)


# -- dense homology with induced maps (small inputs) -----------------------------------

class ChainComplexData:
    """Dense cycles and boundaries of a normalized chain complex, for induced maps."""

    def __init__(self, X: SimplicialSet, cap: int, keep: Optional[Callable[[Key], bool]] = None):
        self.X = X
        self.cap = cap
        self.keep = keep
        self.bases = {k: [key for key in X.nondegenerate(k) if keep is None or keep(key)] for k in range(-1, cap + 2)}
        self.index = {k: {key: a for a, key in enumerate(b)} for k, b in self.bases.items()}

    def dim(self, k):
        return len(self.bases.get(k, []))

    def boundary(self, k) -> List[List[int]]:
        """Matrix of C_k -> C_(k-1), dropping faces outside the kept basis (relative chains)."""
        M = [[0] * self.dim(k) for _ in range(self.dim(k - 1))]
        if k <= 0:
            return M
        for b, key in enumerate(self.bases[k]):
            x = self.X.simplex(key)
            for i in range(k + 1):
                y = self.X.face(x, i)
                if self.X.is_nondegenerate(y) and y[0] in self.index[k - 1]:
                    M[self.index[k - 1][y[0]]][b] += -1 if i % 2 else 1
        return M

    def subquotient(self, k) -> Subquotient:
        n = self.dim(k)
        d = self.boundary(k)
        Z = Lattice.span(n, integer_kernel(d, n)) if d and n else Lattice.full(n)
        B = Lattice.full(self.dim(k + 1)).image(self.boundary(k + 1), n) if self.dim(k + 1) else Lattice.zero(n)
        return Subquotient(Z, B)

    def chain_vector(self, k, chain: Dict[Key, int]) -> List[int]:
        v = [0] * self.dim(k)
        for key, c in chain.items():
            if key in self.index[k]:
                v[self.index[k][key]] += c
        return v


def chain_map_matrix(f: SimplicialMap, src: ChainComplexData, tgt: ChainComplexData, k: int) -> List[List[int]]:
    M = [[0] * src.dim(k) for _ in range(tgt.dim(k))]
    for b, key in enumerate(src.bases[k]):
        y = f(src.X.simplex(key))
        if tgt.X.is_nondegenerate(y) and y[0] in tgt.index[k]:
            M[tgt.index[k][y[0]]][b] += 1
    return M


def induced_map(f: SimplicialMap, cap: int) -> List[Homomorphism]:
    """``H_k(f)`` for k = 0..cap-1 on the dense chain models."""
    src = ChainComplexData(f.source, cap)
    tgt = ChainComplexData(f.target, cap)
    out = []
    for k in range(cap):
        out.append(src.subquotient(k).induced(chain_map_matrix(f, src, tgt, k), tgt.subquotient(k)))
    return out
