"""Multinomial sets of functions, their shuffle permutations and signs.

A function ``sigma: {1..a} -> {1..m}`` with fiber sizes ``(a_1, ..., a_m)``
is stored as its value sequence. Its shuffle permutation lists the sorted
fibers one after another; its sign is the inversion count of that list.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial, prod
from typing import Iterator, List, Sequence, Tuple

Permutation = Tuple[int, ...]


@dataclass(frozen=True)
class FiberedFunction:
    values: Tuple[int, ...]
    fiber_sizes: Tuple[int, ...]

    def __post_init__(self):
        values = tuple(self.values)
        sizes = tuple(self.fiber_sizes)
        counts = [0] * len(sizes)
        for v in values:
            if not 1 <= v <= len(sizes):
                raise ValueError(f"value {v} outside 1..{len(sizes)}")
            counts[v - 1] += 1
        if tuple(counts) != sizes:
            raise ValueError(f"fiber sizes {tuple(counts)} do not match {sizes}")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "fiber_sizes", sizes)

    @classmethod
    def from_values(cls, values: Sequence[int], m: int = None) -> "FiberedFunction":
        m = max(values, default=0) if m is None else m
        return cls(tuple(values), tuple(sum(1 for v in values if v == i) for i in range(1, m + 1)))

    @property
    def domain_size(self) -> int:
        return len(self.values)

    def fiber(self, i: int) -> Tuple[int, ...]:
        return tuple(j + 1 for j, v in enumerate(self.values) if v == i)

    def __lt__(self, other: "FiberedFunction") -> bool:
        return precedes(self, other)


def multinomial_count(total: int, parts: Sequence[int]) -> int:
    """Size of the set (total choose parts); zero unless the parts sum to total."""
    if any(p < 0 for p in parts) or sum(parts) != total:
        return 0
    return factorial(total) // prod(factorial(p) for p in parts)


def enumerate_multinomial(*parts: int) -> Iterator[FiberedFunction]:
    """All functions with the given fiber sizes, lexicographic on value sequences."""
    if len(parts) == 1 and not isinstance(parts[0], int):
        parts = tuple(parts[0])
    sizes = tuple(parts)
    if any(p < 0 for p in sizes):
        raise ValueError("fiber sizes must be nonnegative")
    remaining = list(sizes)
    total = sum(sizes)
    seq: List[int] = []

    def rec():
        if len(seq) == total:
            yield FiberedFunction(tuple(seq), sizes)
            return
        for i, left in enumerate(remaining):
            if left:
                remaining[i] -= 1
                seq.append(i + 1)
                yield from rec()
                seq.pop()
                remaining[i] += 1

    yield from rec()


def tilde_permutation(sigma: FiberedFunction) -> Permutation:
    """Image sequence ``(sigma^-1(1) sorted, sigma^-1(2) sorted, ...)``, 1-based."""
    out: List[int] = []
    for i in range(1, len(sigma.fiber_sizes) + 1):
        out.extend(sigma.fiber(i))
    return tuple(out)


def inversions(perm: Sequence[int]) -> int:
    count = 0
    for r, x in enumerate(perm):
        for y in perm[r + 1:]:
            if x > y:
                count += 1
    return count


def sign(sigma: FiberedFunction) -> int:
    """Number of inversions of the shuffle permutation."""
    return inversions(tilde_permutation(sigma))


def gamma(sigma: FiberedFunction) -> FiberedFunction:
    """Swap the first adjacent pair (2i-1, 2i) whose values differ."""
    v = list(sigma.values)
    for i in range(0, len(v) - 1, 2):
        if v[i] != v[i + 1]:
            v[i], v[i + 1] = v[i + 1], v[i]
            return FiberedFunction(tuple(v), sigma.fiber_sizes)
    return sigma


def is_gamma_fixed(sigma: FiberedFunction) -> bool:
    return gamma(sigma) == sigma


def gamma_fixed_count(x: int, y: int) -> int:
    """Closed form for the number of fixed points of gamma on (x+y choose x, y)."""
    return multinomial_count((x + y) // 2, (x // 2, y // 2))


def count_even_sign(x: int, y: int) -> int:
    """Number of elements of (x+y choose x, y) with even sign, in closed form."""
    return (comb(x + y, x) + gamma_fixed_count(x, y)) // 2


def count_even_sign_enumerated(*parts: int) -> int:
    return sum(1 for s in enumerate_multinomial(*parts) if sign(s) % 2 == 0)


def precedes(sigma: FiberedFunction, tau: FiberedFunction) -> bool:
    """Strict order: the first index where the value sequences differ decides."""
    for a, b in zip(sigma.values, tau.values):
        if a != b:
            return a < b
    return False


# -- regular (2, s)-sets -----------------------------------------------------

PairPartition = Tuple[Tuple[int, int], ...]


def enumerate_pair_partitions(s: int) -> Iterator[PairPartition]:
    """Partitions of {1..2s} into s pairs, each as pairs sorted by least element."""

    def rec(rest: Tuple[int, ...]):
        if not rest:
            yield ()
            return
        first = rest[0]
        for k in range(1, len(rest)):
            pair = (first, rest[k])
            for tail in rec(rest[1:k] + rest[k + 1:]):
                yield (pair,) + tail

    yield from rec(tuple(range(1, 2 * s + 1)))


def validate_pair_partition(blocks: Sequence[Sequence[int]]) -> PairPartition:
    s = len(blocks)
    flat = sorted(x for b in blocks for x in b)
    if any(len(b) != 2 for b in blocks) or flat != list(range(1, 2 * s + 1)):
        raise ValueError(f"{blocks} is not a partition of 1..{2 * s} into pairs")
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


def partition_of(sigma: FiberedFunction) -> PairPartition:
    """The unordered partition {sigma^-1(1), ..., sigma^-1(s)}."""
    return validate_pair_partition([sigma.fiber(i) for i in range(1, len(sigma.fiber_sizes) + 1)])


def least_preimage(blocks: PairPartition) -> FiberedFunction:
    """Least labeling of the blocks in the order of :func:`precedes`.

    Labels are assigned in order of first appearance, which is what the
    lexicographic order forces.
    """
    blocks = validate_pair_partition(blocks)
    values = [0] * (2 * len(blocks))
    for label, (a, b) in enumerate(blocks, start=1):
        values[a - 1] = values[b - 1] = label
    return FiberedFunction(tuple(values), (2,) * len(blocks))


def partition_sign(blocks: PairPartition) -> int:
    return sign(least_preimage(blocks))


def odd_double_factorial(s: int) -> int:
    """1 * 3 * 5 * ... * (2s - 1) = (2s)! / (s! 2^s)."""
    return prod(range(1, 2 * s, 2))


def eo_counts(s: int) -> Tuple[int, int]:
    """(E, O): pair partitions of {1..2s} with even / odd sign."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    even = odd = 0
    for blocks in enumerate_pair_partitions(s):
        # shuffle permutation of least_preimage(blocks): blocks come sorted by least element
        if inversions([x for b in blocks for x in b]) % 2:
            odd += 1
        else:
            even += 1
    return even, odd


def regular_set_permutations(s: int) -> List[Permutation]:
    """Shuffle permutations of the least representatives of all pair partitions."""
    return [tilde_permutation(least_preimage(b)) for b in enumerate_pair_partitions(s)]


# -- permutation notation ----------------------------------------------------

def to_cycles(perm: Sequence[int]) -> List[Tuple[int, ...]]:
    """Nontrivial cycles of ``j -> perm[j-1]``."""
    seen = set()
    cycles = []
    for start in range(1, len(perm) + 1):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        j = perm[start - 1]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = perm[j - 1]
        if len(cyc) > 1:
            cycles.append(tuple(cyc))
    return cycles


def cycle_notation(perm: Sequence[int]) -> str:
    cycles = to_cycles(perm)
    if not cycles:
        return "e"
    return "".join("(" + "".join(map(str, c)) + ")" for c in cycles)


def from_cycles(text: str, degree: int) -> Permutation:
    """Parse ``e`` or ``(243)(15)`` into an image sequence of the given degree.

    Single digit letters only; that covers every permutation used here.
    """
    perm = list(range(1, degree + 1))
    text = text.replace(" ", "")
    if text in ("e", "id", ""):
        return tuple(perm)
    for chunk in text.strip("()").split(")("):
        pts = [int(ch) for ch in chunk]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            perm[a - 1] = b
    return tuple(perm)
