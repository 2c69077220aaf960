"""First-quadrant homological spectral sequences of finitely generated abelian groups.

Two sources are supported. :meth:`SpectralSequence.from_filtered_complex`
builds the sequence of a filtered free chain complex, where every page is a
subquotient ``Z^r_p / (Z^(r-1)_(p-1) + d Z^(r-1)_(p+r-1))`` of the chain
group and ``d^r`` is induced by the chain differential. :meth:`from_e1` takes
an E^1 page with its d^1 and no higher structure, so ``d^r = 0`` for r >= 2.

Either way every entry ``E^r_(i,j)`` is a :class:`Subquotient` of a fixed
ambient ``Z^N`` and every differential or morphism component is an ambient
matrix, which is what makes induced maps computable on every page.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .fgab import (
    FGAbError,
    FGAbGroup,
    Homomorphism,
    Lattice,
    Matrix,
    Subquotient,
    homology,
    identity,
    integer_kernel,
    iso_test,
    map_is_injective,
    map_is_surjective,
    matmul,
    transpose,
    zeros,
)

Pos = Tuple[int, int]


class SpecSeqError(ValueError):
    pass


# -- filtered complexes -------------------------------------------------------

@dataclass
class FilteredComplex:
    """Free chain complex ``C_0 <- C_1 <- ... <- C_top`` with a filtration degree per basis element.

    ``d[n]`` is the ``dim C_(n-1) x dim C_n`` matrix of ``d_n``. ``F_p C_n`` is
    spanned by the basis elements of filtration at most p; first quadrant
    means ``0 <= p <= n``.
    """

    filt: Dict[int, List[int]]
    d: Dict[int, Matrix]

    def __post_init__(self):
        self.filt = {n: list(f) for n, f in self.filt.items()}
        self.top = max(self.filt, default=-1)
        for n in range(self.top + 1):
            self.filt.setdefault(n, [])
        given = self.d
        self.d = {}
        for n in range(1, self.top + 1):
            M = given.get(n)
            self.d[n] = zeros(self.dim(n - 1), self.dim(n)) if M is None else [list(r) for r in M]
        self.validate()

    def dim(self, n: int) -> int:
        return len(self.filt.get(n, []))

    @property
    def max_filtration(self) -> int:
        return max((p for f in self.filt.values() for p in f), default=0)

    def validate(self):
        for n, f in self.filt.items():
            if n < 0 or any(p < 0 or p > n for p in f):
                raise SpecSeqError(f"filtration degrees in C_{n} must lie in [0, {n}]")
        for n in range(1, self.top + 1):
            M = self.d[n]
            if len(M) != self.dim(n - 1) or any(len(r) != self.dim(n) for r in M):
                raise SpecSeqError(f"d_{n} must be {self.dim(n - 1)} x {self.dim(n)}")
            for a, row in enumerate(M):
                for b, x in enumerate(row):
                    if x and self.filt[n - 1][a] > self.filt[n][b]:
                        raise SpecSeqError(f"d_{n} does not preserve the filtration")
        for n in range(2, self.top + 1):
            if any(any(r) for r in matmul(self.d[n - 1], self.d[n])):
                raise SpecSeqError(f"d_{n - 1} d_{n} != 0")

    def differential(self, n: int) -> Matrix:
        if 1 <= n <= self.top:
            return self.d[n]
        return zeros(self.dim(n - 1), self.dim(n))

    def cycles_below(self, p: int, n: int, level: int) -> Lattice:
        """``{x in F_p C_n : d x in F_level C_(n-1)}``."""
        N = self.dim(n)
        if p < 0 or N == 0:
            return Lattice.zero(N)
        cols = [b for b in range(N) if self.filt[n][b] <= p]
        if not cols:
            return Lattice.zero(N)
        M = self.differential(n)
        rows = [M[a] for a in range(self.dim(n - 1)) if self.filt[n - 1][a] > level]
        sub = [[row[b] for b in cols] for row in rows]
        ker = integer_kernel(sub, len(cols)) if sub else identity(len(cols))
        gens = []
        for v in ker:
            full = [0] * N
            for k, b in enumerate(cols):
                full[b] = v[k]
            gens.append(full)
        return Lattice.span(N, gens)

    def boundaries(self, n: int) -> Lattice:
        M = self.differential(n + 1)
        return Lattice.full(self.dim(n + 1)).image(M, self.dim(n))

    def homology(self, n: int) -> FGAbGroup:
        return Subquotient(self.cycles_below(n, n, -1), self.boundaries(n)).group()

    def homology_filtration_piece(self, p: int, n: int) -> FGAbGroup:
        """``(Z cap F_p + B) / (Z cap F_(p-1) + B)`` for the image filtration of ``H_n``."""
        B = self.boundaries(n)
        return Subquotient(self.cycles_below(p, n, -1) + B, self.cycles_below(p - 1, n, -1) + B).group()


# -- spectral sequences -------------------------------------------------------

class SpectralSequence:
    """Pages are computed lazily and cached; call :meth:`turn_page` or :meth:`page`.

    A computed instance may be shared for reading, but turning pages on one
    instance from several threads needs external locking.
    """

    def __init__(self, positions: Iterable[Pos]):
        self.positions = sorted({p for p in positions if p[0] >= 0 and p[1] >= 0})
        self._terms: Dict[Tuple[int, int, int], Subquotient] = {}
        self._computed = {1}
        self._posset = set(self.positions)
        self.max_i = max((p[0] for p in self.positions), default=0)
        self.max_j = max((p[1] for p in self.positions), default=0)

    # subclasses provide these three
    def ambient_dim(self, i: int, j: int) -> int:
        raise NotImplementedError

    def _make_term(self, r: int, i: int, j: int) -> Subquotient:
        raise NotImplementedError

    def differential_matrix(self, r: int, i: int, j: int) -> Matrix:
        raise NotImplementedError

    @classmethod
    def from_filtered_complex(cls, fc: FilteredComplex) -> "FilteredSpectralSequence":
        return FilteredSpectralSequence(fc)

    @classmethod
    def from_e1(cls, e1: Dict[Pos, FGAbGroup], d1: Dict[Pos, Matrix]) -> "E1SpectralSequence":
        return E1SpectralSequence(e1, d1)

    def in_window(self, i: int, j: int) -> bool:
        return i >= 0 and j >= 0 and (i, j) in self._posset

    def term(self, r: int, i: int, j: int) -> Subquotient:
        if r < 1:
            raise SpecSeqError("pages start at r = 1")
        if not self.in_window(i, j):
            return Subquotient(Lattice.zero(0), Lattice.zero(0))
        key = (r, i, j)
        if key not in self._terms:
            self._terms[key] = self._make_term(r, i, j)
        return self._terms[key]

    def entry(self, r: int, i: int, j: int) -> FGAbGroup:
        """``E^r_(i,j)``; pages up to r are turned first."""
        self.page(r)
        return self.term(r, i, j).group()

    def differential(self, r: int, i: int, j: int) -> Homomorphism:
        """``d^r : E^r_(i,j) -> E^r_(i-r, j+r-1)``."""
        src = self.term(r, i, j)
        tgt = self.term(r, i - r, j + r - 1)
        if not self.in_window(i, j) or not self.in_window(i - r, j + r - 1):
            return Homomorphism(src.group(), tgt.group(), zeros(tgt.top.rank, src.top.rank))
        return src.induced(self.differential_matrix(r, i, j), tgt)

    def turn_page(self, r: int) -> Dict[Pos, FGAbGroup]:
        """Compute page r+1 as ``ker d^r / im d^r`` and check it against the stored representation."""
        if r not in self._computed:
            raise SpecSeqError(f"page {r} has not been computed")
        out = {}
        for i, j in self.positions:
            d_in = self.differential(r, i + r, j - r + 1)
            d_out = self.differential(r, i, j)
            try:
                h = homology(d_in, d_out)
            except FGAbError as exc:
                raise SpecSeqError(f"d^{r} d^{r} != 0 at ({i},{j})") from exc
            nxt = self.term(r + 1, i, j).group()
            if not iso_test(h, nxt):
                raise SpecSeqError(f"page {r + 1} at ({i},{j}): homology {h} but couple gives {nxt}")
            out[(i, j)] = nxt
        self._computed.add(r + 1)
        return out

    def page(self, r: int) -> Dict[Pos, FGAbGroup]:
        start = max(k for k in self._computed if k <= r)
        for k in range(start, r):
            self.turn_page(k)
        return {(i, j): self.term(r, i, j).group() for i, j in self.positions}

    def stable_index(self, i: int, j: int) -> int:
        return max(i + 1, j + 2) + 1

    def stable_page(self, i: int, j: int) -> FGAbGroup:
        """``E^r_(i,j)`` for r past every differential into or out of (i, j)."""
        return self.entry(self.stable_index(i, j), i, j)

    def last_page(self) -> int:
        return max((self.stable_index(i, j) for i, j in self.positions), default=2)

    def to_json(self, r: int) -> dict:
        pg = self.page(r)
        entries = [{"i": i, "j": j, "invariants": g.invariants, "rank": g.free_rank} for (i, j), g in sorted(pg.items())]
        return {"r": r, "entries": entries}


class FilteredSpectralSequence(SpectralSequence):
    def __init__(self, fc: FilteredComplex):
        self.fc = fc
        pos = [(p, n - p) for n in range(fc.top + 1) for p in range(n + 1) if any(f == p for f in fc.filt[n])]
        # positions with no basis element are zero on every page; keep the window tight
        super().__init__(pos)

    def ambient_dim(self, i, j):
        return self.fc.dim(i + j)

    def _z(self, r: int, p: int, n: int) -> Lattice:
        return self.fc.cycles_below(p, n, p - r)

    def _make_term(self, r, i, j):
        p, n = i, i + j
        fc = self.fc
        top = self._z(r, p, n)
        up = self._z(r - 1, p + r - 1, n + 1)
        bottom = self._z(r - 1, p - 1, n) + up.image(fc.differential(n + 1), fc.dim(n))
        return Subquotient(top, bottom)

    def differential_matrix(self, r, i, j):
        return self.fc.differential(i + j)

    def abutment_mismatches(self) -> List[Pos]:
        """Positions where ``E^inf_(p, n-p)`` differs from the p-th graded piece of ``H_n``."""
        bad = []
        for n in range(self.fc.top + 1):
            for p in range(n + 1):
                piece = self.fc.homology_filtration_piece(p, n)
                einf = self.stable_page(p, n - p) if (p, n - p) in self._posset else FGAbGroup.free(0)
                if not iso_test(einf, piece):
                    bad.append((p, n - p))
        return bad


class E1SpectralSequence(SpectralSequence):
    def __init__(self, e1: Dict[Pos, FGAbGroup], d1: Dict[Pos, Matrix]):
        for (i, j) in e1:
            if i < 0 or j < 0:
                raise SpecSeqError("E^1 must live in the first quadrant")
        self.e1 = dict(e1)
        self.d1 = {}
        for (i, j), M in d1.items():
            src = e1.get((i, j))
            tgt = e1.get((i - 1, j))
            if src is None or tgt is None:
                if M and any(any(r) for r in M):
                    raise SpecSeqError(f"d^1 at ({i},{j}) leaves the support")
                continue
            h = Homomorphism(src, tgt, M)
            if not h.check_well_defined():
                raise SpecSeqError(f"d^1 at ({i},{j}) does not respect relations")
            self.d1[(i, j)] = h.matrix
        super().__init__(e1.keys())

    def ambient_dim(self, i, j):
        return self.e1[(i, j)].ngens if (i, j) in self.e1 else 0

    def _d1(self, i, j) -> Matrix:
        if (i, j) in self.d1:
            return self.d1[(i, j)]
        return zeros(self.ambient_dim(i - 1, j), self.ambient_dim(i, j))

    def _make_term(self, r, i, j):
        g = self.e1[(i, j)]
        rel = g.relation_lattice()
        if r == 1:
            return Subquotient(Lattice.full(g.ngens), rel)
        out = Homomorphism(g, self.e1.get((i - 1, j), FGAbGroup(0)), self._d1(i, j))
        top = out.kernel_lattice() + rel
        if (i + 1, j) in self.e1:
            bottom = Lattice.full(self.ambient_dim(i + 1, j)).image(self._d1(i + 1, j), g.ngens) + rel
        else:
            bottom = rel
        return Subquotient(top, bottom)

    def differential_matrix(self, r, i, j):
        if r == 1:
            return self._d1(i, j)
        return zeros(self.ambient_dim(i - r, j + r - 1), self.ambient_dim(i, j))


def _product(A: Matrix, B: Matrix, ncols: int) -> Matrix:
    if not A:
        return []
    if not B:
        return zeros(len(A), ncols)
    return matmul(A, B)


# -- morphisms and the comparison lemma -------------------------------------------

class SpecSeqMorphism:
    """A morphism given by ambient matrices, one per position, commuting with d^1.

    For filtered sequences the matrices are a filtered chain map (one matrix
    per total degree); for E^1 sequences they are the components of theta^1.
    """

    def __init__(self, source: SpectralSequence, target: SpectralSequence, ambient: Callable[[int, int], Matrix]):
        self.source = source
        self.target = target
        self._ambient = ambient
        for i, j in source.positions:
            lhs = self.theta(1, i - 1, j).compose(source.differential(1, i, j))
            rhs = target.differential(1, i, j).compose(self.theta(1, i, j))
            diff = Homomorphism(lhs.source, lhs.target, [[a - b for a, b in zip(x, y)] for x, y in zip(lhs.matrix, rhs.matrix)])
            if not diff.is_zero():
                raise SpecSeqError(f"theta^1 does not commute with d^1 at ({i},{j})")

    @classmethod
    def from_chain_map(cls, source: FilteredSpectralSequence, target: FilteredSpectralSequence, phi: Dict[int, Matrix]):
        fs, ft = source.fc, target.fc
        for n in range(max(fs.top, ft.top) + 1):
            M = phi.get(n) or zeros(ft.dim(n), fs.dim(n))
            for a, row in enumerate(M):
                for b, x in enumerate(row):
                    if x and ft.filt[n][a] > fs.filt[n][b]:
                        raise SpecSeqError(f"chain map does not preserve the filtration in degree {n}")
            if n >= 1 and ft.dim(n - 1):
                Mprev = phi.get(n - 1) or zeros(ft.dim(n - 1), fs.dim(n - 1))
                lhs = _product(ft.differential(n), M, fs.dim(n))
                rhs = _product(Mprev, fs.differential(n), fs.dim(n))
                if lhs != rhs:
                    raise SpecSeqError(f"not a chain map in degree {n}")
        return cls(source, target, lambda i, j: phi.get(i + j) or zeros(ft.dim(i + j), fs.dim(i + j)))

    @classmethod
    def from_theta1(cls, source: E1SpectralSequence, target: E1SpectralSequence, theta1: Dict[Pos, Matrix]):
        def amb(i, j):
            if (i, j) in theta1:
                return theta1[(i, j)]
            return zeros(target.ambient_dim(i, j), source.ambient_dim(i, j))

        for (i, j), M in theta1.items():
            if (i, j) in source.e1 and (i, j) in target.e1:
                if not Homomorphism(source.e1[(i, j)], target.e1[(i, j)], M).check_well_defined():
                    raise SpecSeqError(f"theta^1 at ({i},{j}) does not respect relations")
        return cls(source, target, amb)

    def theta(self, r: int, i: int, j: int) -> Homomorphism:
        src = self.source.term(r, i, j)
        tgt = self.target.term(r, i, j)
        if not self.source.in_window(i, j) or not self.target.in_window(i, j):
            return Homomorphism(src.group(), tgt.group(), zeros(tgt.top.rank, src.top.rank))
        return src.induced(self._ambient(i, j), tgt)


@dataclass
class ComparisonReport:
    hypothesis_holds: bool
    passed: bool
    checked: int = 0
    counterexample: Optional[Tuple[int, int, int, str]] = None
    violations: List[Tuple[int, int, int, str]] = field(default_factory=list)

    def __str__(self):
        if not self.hypothesis_holds:
            return "hypothesis fails: theta^1 is not an isomorphism below row q"
        if self.passed:
            return f"pass ({self.checked} checks)"
        r, i, j, what = self.counterexample
        return f"fail: {what} at r={r}, (i,j)=({i},{j})"


def check_comparison(m: SpecSeqMorphism, q: int) -> ComparisonReport:
    """Verify the comparison lemma for a morphism whose theta^1 is iso in rows j < q.

    For every page r and position (i, j): (1) theta^r injective if j < q;
    (2) theta^r iso if r >= 2 and j + r - 2 < q; (3) theta^r iso if j < q and
    i + j <= q. Clause (2) is not checked at r = 1, where it would extend the
    hypothesis to row q.
    """
    positions = sorted(set(m.source.positions) | set(m.target.positions))
    for i, j in positions:
        if j < q:
            t = m.theta(1, i, j)
            if not (map_is_injective(t) and map_is_surjective(t)):
                return ComparisonReport(False, False)
    r_max = max(m.source.last_page(), m.target.last_page())
    m.source.page(r_max)
    m.target.page(r_max)
    report = ComparisonReport(True, True)
    for r in range(1, r_max + 1):
        for i, j in positions:
            need_inj = j < q
            need_iso = (r >= 2 and j + r - 2 < q) or (j < q and i + j <= q)
            if not (need_inj or need_iso):
                continue
            t = m.theta(r, i, j)
            inj = map_is_injective(t)
            report.checked += 1
            if need_inj and not inj:
                report.violations.append((r, i, j, "theta^r not injective"))
            if need_iso and not (inj and map_is_surjective(t)):
                report.violations.append((r, i, j, "theta^r not an isomorphism"))
    if report.violations:
        report.passed = False
        report.counterexample = report.violations[0]
    return report


# -- random instances ----------------------------------------------------------------

def _kernel_in_filtration(d_prev: Matrix, filt_prev: List[int], p: int) -> List[List[int]]:
    """Integer basis of ``ker d_(n-1) cap F_p C_(n-1)`` as full vectors."""
    N = len(filt_prev)
    cols = [b for b in range(N) if filt_prev[b] <= p]
    if not cols:
        return []
    sub = [[row[b] for b in cols] for row in d_prev] if d_prev else []
    ker = integer_kernel(sub, len(cols)) if sub and sub[0] else identity(len(cols))
    out = []
    for v in ker:
        full = [0] * N
        for k, b in enumerate(cols):
            full[b] = v[k]
        out.append(full)
    return out


def _random_boundary(rng: random.Random, basis: List[List[int]], N: int, bound: int) -> List[int]:
    for _ in range(8):
        v = [0] * N
        for b in basis:
            c = rng.randint(-2, 2)
            if c:
                v = [x + c * y for x, y in zip(v, b)]
        if all(abs(x) <= bound for x in v):
            return v
    return [0] * N


def random_filtered_complex(rng: random.Random, top: int = 6, steps: int = 4, max_dim: int = 3, bound: int = 9) -> FilteredComplex:
    """Random first-quadrant filtered complex with entries bounded by ``bound``.

    Each boundary column is a random combination of cycles one degree down
    in the allowed filtration, so ``d d = 0`` and the filtration is respected
    by construction.
    """
    filt: Dict[int, List[int]] = {}
    d: Dict[int, Matrix] = {}
    for n in range(top + 1):
        k = rng.randint(0, max_dim)
        filt[n] = sorted(rng.randint(0, min(n, steps - 1)) for _ in range(k))
        if n == 0:
            continue
        prev = filt[n - 1]
        d_prev = d.get(n - 1, [])
        cols = []
        for p in filt[n]:
            basis = _kernel_in_filtration(d_prev, prev, p)
            cols.append(_random_boundary(rng, basis, len(prev), bound) if rng.random() < 0.8 else [0] * len(prev))
        d[n] = transpose(cols) if cols and prev else [[] for _ in prev]
    return FilteredComplex(filt, d)


def _basis_change(rng: random.Random, fc: FilteredComplex, theta: Dict[int, Matrix], moves: int = 2):
    """Random filtration-preserving unimodular change of basis of fc, carried through theta."""
    filt = fc.filt
    d = {n: [list(r) for r in M] for n, M in fc.d.items()}
    theta = {n: [list(r) for r in M] for n, M in theta.items()}
    for _ in range(moves):
        n = rng.randint(0, fc.top)
        N = fc.dim(n)
        if N < 2:
            continue
        k, l = rng.sample(range(N), 2)
        if filt[n][l] > filt[n][k]:
            k, l = l, k
        c = rng.choice((-1, 1))
        # new e_k = e_k + c e_l: columns of d_n mix, rows of d_(n+1) and theta_n mix the other way
        if n >= 1 and n in d:
            for row in d[n]:
                row[k] += c * row[l]
        if n + 1 in d:
            d[n + 1][l] = [x - c * y for x, y in zip(d[n + 1][l], d[n + 1][k])]
        if n in theta and theta[n]:
            theta[n][l] = [x - c * y for x, y in zip(theta[n][l], theta[n][k])]
    return FilteredComplex(filt, d), theta


def random_comparison_pair(rng: random.Random, q: int, top: int = 5, steps: int = 4, extra: int = 4):
    """A filtered inclusion ``C -> C'`` whose theta^1 is iso in rows below q, as far as the construction goes.

    ``C'`` adds to ``C`` new basis elements in rows at least ``q + 1`` with
    random boundaries, plus pairs ``a -> b`` of equal filtration which are
    acyclic on the associated graded. A random basis change then hides the
    inclusion. The hypothesis should still be checked by the caller.
    """
    C = random_filtered_complex(rng, top=top, steps=steps, max_dim=2)
    filt2 = {n: list(C.filt[n]) for n in range(top + 1)}
    d2 = {n: [list(r) for r in C.differential(n)] for n in range(1, top + 1)}
    # positions of the original basis inside C' are the first dim C_n slots
    for _ in range(extra):
        if rng.random() < 0.5:
            # high element in degree n, filtration p with n - p >= q + 1
            n = rng.randint(q + 1, top) if q + 1 <= top else None
            if n is None:
                continue
            p = rng.randint(0, min(n - q - 1, steps - 1))
            _append_element(rng, filt2, d2, n, p, top)
        else:
            n = rng.randint(1, top)
            p = rng.randint(0, min(n - 1, steps - 1))
            _append_pair(rng, filt2, d2, n, p, top)
    Cp = FilteredComplex(filt2, d2)
    theta = {n: [[int(a == b) for b in range(C.dim(n))] for a in range(Cp.dim(n))] for n in range(top + 1)}
    Cp, theta = _basis_change(rng, Cp, theta)
    return C, Cp, theta


def _append_column(d2, filt2, n, col, top):
    """Add a basis element to C_n with boundary ``col``; pads d_(n+1) with a zero row."""
    if n >= 1:
        for row, x in zip(d2[n], col):
            row.append(x)
    if n + 1 <= top:
        width = len(filt2.get(n + 1, []))
        d2[n + 1].append([0] * width)


def _append_element(rng, filt2, d2, n, p, top):
    prev = filt2[n - 1] if n >= 1 else []
    col = []
    if n >= 1:
        basis = _kernel_in_filtration(d2.get(n - 1, []), prev, p)
        col = _random_boundary(rng, basis, len(prev), 9)
    filt2[n].append(p)
    _append_column(d2, filt2, n, col, top)


def _append_pair(rng, filt2, d2, n, p, top):
    """New b in degree n-1 and a in degree n, both of filtration p, with d a = b + x, d b = -d x, x in F_(p-1)."""
    prev = filt2[n - 1]
    x = [0] * len(prev)
    if p >= 1 and rng.random() < 0.7:
        for k, f in enumerate(prev):
            if f <= p - 1 and rng.random() < 0.5:
                x[k] = rng.choice((-1, 1))
    # boundary of b is -d x, computed in degree n-1
    if n - 1 >= 1:
        dx = [sum(row[k] * x[k] for k in range(len(prev))) for row in d2[n - 1]]
        b_col = [-v for v in dx]
    else:
        b_col = []
    filt2[n - 1].append(p)
    _append_column(d2, filt2, n - 1, b_col, top)
    a_col = x + [1]
    filt2[n].append(p)
    _append_column(d2, filt2, n, a_col, top)
