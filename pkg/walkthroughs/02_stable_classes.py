"""Counting shuffles by sign, and the diagonal of the James-Hopf comparison.

Splitting 2s letters into s unordered pairs, the even shuffles outnumber the
odd ones by exactly one. That imbalance is what makes the diagonal entries of
the comparison matrix look like (m+1) + m*e.
"""

from ehpkit import (
    REAL,
    Z,
    Z2,
    SphereShape,
    bareiss,
    c_invertible,
    diagonal_vector,
    eo_counts,
    example_james_hopf_perms,
    perm_sum_matrix,
    rational_rank,
    single_letter_block,
)

print("pair partitions of 2s letters, (even, odd):")
for s in range(1, 6):
    print(f"  s={s}: {eo_counts(s)}")

sphere = SphereShape(2, 1)
print(f"\ndiagonal of the comparison for S^(2 + alpha), e = {sphere.twist()}:")
for i, d in enumerate(diagonal_vector(sphere, Z, 8)):
    print(f"  d_{i} = {d}")

print("\ninvertibility up to i = 24:")
for P in (Z2, Z):
    print(f"  {P}: {c_invertible(sphere, P, REAL, 24)}")

# A hand-sized case where the matrix is singular: words of length 4 in two letters.
full = perm_sum_matrix(example_james_hopf_perms(), 2, 4)
block = single_letter_block(full, 2, 4)
print("\nsingle-letter block of the 16x16 permutation sum:")
for row in block:
    print("  ", row)
print("  det =", bareiss(block)[1], " rank of the full matrix =", rational_rank(full))
