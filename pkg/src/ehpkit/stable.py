"""GW-valued stable classes of spheres: diagonal components, James-Hopf
components, and the diagonal entries of the comparison map ``c``.

A permutation of ``X^(smash r)`` for a sphere ``X = S^(n + q alpha)`` acts
as ``e^sign`` where ``e`` is the twist class of ``X``; every class below is
therefore a sum of powers of ``e``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import List, Sequence, Tuple

from .gw import FailsAt, FieldClass, GWElement, gw_is_unit, twist_class
from .localization import PrimeSet, Z
from .multinomial import (
    count_even_sign,
    enumerate_multinomial,
    eo_counts,
    from_cycles,
    odd_double_factorial,
    sign,
)


@dataclass(frozen=True)
class SphereShape:
    """``S^(n + q alpha)``: n simplicial circles smashed with q copies of G_m."""

    n: int
    q: int = 0

    def __post_init__(self):
        if self.n < 1 or self.q < 0:
            raise ValueError(f"need n >= 1 and q >= 0, got ({self.n}, {self.q})")

    def twist(self, primes: PrimeSet = Z) -> GWElement:
        return twist_class(self.n, self.q, primes)


@dataclass(frozen=True)
class Invertible:
    def __str__(self):
        return "Invertible"


def _power_of(e: GWElement, k: int) -> GWElement:
    return e if k % 2 else GWElement.of(1, 0, e.primes)


def delta_class(i: int, parts: Sequence[int], sphere: SphereShape, primes: PrimeSet = Z) -> GWElement:
    """Component ``X^(smash i) -> X^(smash a_1) ^ ... ^ X^(smash a_w)`` of the diagonal.

    Zero off ``i = sum(parts)`` (spheres are co-H spaces); otherwise the sum of
    ``e^sign(sigma)`` over the multinomial set, by direct enumeration.
    """
    parts = tuple(parts)
    if any(a < 0 for a in parts):
        raise ValueError("parts must be nonnegative")
    zero = GWElement.of(0, 0, primes)
    if i != sum(parts):
        return zero
    e = sphere.twist(primes)
    even = odd = 0
    for sigma in enumerate_multinomial(*parts):
        if sign(sigma) % 2:
            odd += 1
        else:
            even += 1
    return GWElement.of(even, 0, primes) + _power_of(e, 1) * odd


def delta2_closed(x: int, y: int, sphere: SphereShape, primes: PrimeSet = Z) -> GWElement:
    """Two-factor diagonal component from the even-sign count, no enumeration."""
    from math import comb

    even = count_even_sign(x, y)
    odd = comb(x + y, x) - even
    return GWElement.of(even, 0, primes) + sphere.twist(primes) * odd


def james_hopf_class(i: int, s: int, sphere: SphereShape, primes: PrimeSet = Z) -> GWElement:
    """Component ``D_i(X) -> D_s(X ^ X)`` of the second James-Hopf map.

    ``E(2,s) + O(2,s) e`` when ``i = 2s`` and zero otherwise.
    """
    if i != 2 * s:
        return GWElement.of(0, 0, primes)
    if s == 0:
        return GWElement.of(1, 0, primes)
    even, odd = eo_counts(s)
    return GWElement.of(even, 0, primes) + sphere.twist(primes) * odd


def _james_hopf_closed(s: int, e: GWElement) -> GWElement:
    # E - O = 1 and E + O = (2s-1)!!
    total = odd_double_factorial(s)
    odd = (total - 1) // 2
    return GWElement.of(odd + 1, 0, e.primes) + e * odd


def diagonal_entry(i: int, sphere: SphereShape, primes: PrimeSet = Z, enumerate_classes: bool = False) -> GWElement:
    """``d_(i,i)`` of the comparison map: ``a^2_(2m,m) * Delta^2_(i,(2m,s))`` for ``i = 2m + s``.

    By default the James-Hopf factor uses its closed form; pass
    ``enumerate_classes=True`` to count pair partitions instead.
    """
    if i < 1:
        raise ValueError("diagonal entries are indexed from 1")
    m, s = divmod(i, 2)
    if enumerate_classes:
        hopf = james_hopf_class(2 * m, m, sphere, primes)
    else:
        hopf = _james_hopf_closed(m, sphere.twist(primes))
    return hopf * delta2_closed(2 * m, s, sphere, primes)


def diagonal_vector(sphere: SphereShape, primes: PrimeSet, i_max: int) -> List[GWElement]:
    """Entries ``d_(0,0) = 1, d_(1,1), ..., d_(i_max, i_max)``."""
    return [GWElement.of(1, 0, primes)] + [diagonal_entry(i, sphere, primes) for i in range(1, i_max + 1)]


def closed_form_diagonal(n: int, sphere: SphereShape, primes: PrimeSet = Z) -> GWElement:
    """The two displayed closed formulas for the n-th diagonal term, taken literally.

    Even n: ``1 + ((2n)!/(2^n n!) - 1)(e + 1)/2``; odd n: the same expression at
    ``n - 1`` times ``(n+1)/2 + (n-1)/2 e``. Kept only to compare with
    :func:`diagonal_entry`. The even formula equals ``diagonal_entry(2n)``;
    the odd one does not match ``diagonal_entry(n)`` (n = 3 gives ``(2+e)^2``
    where the entry is ``2+e``).
    """
    e = sphere.twist(primes)

    def even_part(k: int) -> GWElement:
        # (2k-1)!! is odd, so the halving is exact
        return GWElement.of(1, 0, primes) + (e + 1) * ((odd_double_factorial(k) - 1) // 2)

    if n % 2 == 0:
        return even_part(n)
    return even_part(n - 1) * (GWElement.of((n + 1) // 2, 0, primes) + e * ((n - 1) // 2))


def c_invertible(sphere: SphereShape, primes: PrimeSet, field: FieldClass, i_max: int):
    """Invertible if every ``d_(i,i)`` with ``1 <= i <= i_max`` is a unit, else the least failing i."""
    if i_max < 1:
        raise ValueError("i_max must be positive")
    for i in range(1, i_max + 1):
        if not gw_is_unit(diagonal_entry(i, sphere, primes), field):
            return FailsAt(i)
    return Invertible()


# -- permutation representation on wedge summands ----------------------------

def act_on_tuple(perm: Sequence[int], t: Sequence[int]) -> Tuple[int, ...]:
    """Move the entry in position k to position perm[k]."""
    out = [0] * len(t)
    for k, val in enumerate(t):
        out[perm[k] - 1] = val
    return tuple(out)


def wedge_tuples(w: int, r: int) -> List[Tuple[int, ...]]:
    return list(product(range(1, w + 1), repeat=r))


def perm_sum_matrix(perms: Sequence[Sequence[int]], w: int, r: int) -> List[List[int]]:
    """Sum of the permutation actions on the ``w^r`` top cells of ``(S^k v ... v S^k)^(smash r)``.

    Rows and columns are indexed by ``{1..w}^r`` in lexicographic order;
    entry ``[t][t']`` counts the permutations sending the summand ``t`` to
    ``t'``. The cells sit in even degree, so no signs appear.
    """
    perms = [tuple(p) for p in perms]
    if any(len(p) != r or sorted(p) != list(range(1, r + 1)) for p in perms):
        raise ValueError(f"every permutation must have degree {r}")
    tuples = wedge_tuples(w, r)
    index = {t: k for k, t in enumerate(tuples)}
    mat = [[0] * len(tuples) for _ in tuples]
    for t in tuples:
        for p in perms:
            mat[index[t]][index[act_on_tuple(p, t)]] += 1
    return mat


def single_letter_block(mat: List[List[int]], w: int, r: int, letter: int = 1, other: int = 2) -> List[List[int]]:
    """Restriction to tuples with exactly one ``letter`` and ``other`` elsewhere."""
    tuples = wedge_tuples(w, r)
    keep = [k for k, t in enumerate(tuples) if t.count(letter) == 1 and t.count(other) == r - 1]
    return [[mat[a][b] for b in keep] for a in keep]


def example_james_hopf_perms() -> List[Tuple[int, ...]]:
    """``e + (23) + (243)``, the James-Hopf component ``a^2_(4,2)`` as permutations of 4 letters."""
    return [from_cycles(c, 4) for c in ("e", "(23)", "(243)")]
