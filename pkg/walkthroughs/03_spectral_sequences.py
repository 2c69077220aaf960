"""A spectral sequence you can check by hand, then a random one checked by machine.

The pages are computed as subquotients of the chains, so every entry is an
honest finitely generated abelian group and E^infinity can be compared with
the associated graded of the homology.
"""

import random

from ehpkit import FilteredComplex, SpecSeqMorphism, SpectralSequence, check_comparison, random_comparison_pair, random_filtered_complex

# C_2 = <x> in filtration 2, C_1 = <y> in filtration 0, d x = 3y.
# The class of y survives to E^2 and is hit by a d^2 there, leaving Z/3.
fc = FilteredComplex({0: [], 1: [0], 2: [2]}, {2: [[3]]})
ss = SpectralSequence.from_filtered_complex(fc)
for r in (1, 2, 3):
    nonzero = {pos: str(g) for pos, g in ss.page(r).items() if not g.is_trivial()}
    print(f"E^{r}:", nonzero)
print("H_1 =", fc.homology(1), " mismatches with E^inf:", ss.abutment_mismatches())

rng = random.Random(7)
print("\nrandom filtered complexes:")
for k in range(5):
    rfc = random_filtered_complex(rng)
    rss = SpectralSequence.from_filtered_complex(rfc)
    print(f"  #{k}: last page {rss.last_page()}, abutment mismatches {rss.abutment_mismatches()}")

# Iso on E^r_{i,j} for i < q should propagate to E^infinity in the same range.
print("\ncomparison theorem on random pairs, q = 2:")
for k in range(3):
    C, Cp, theta = random_comparison_pair(rng, 2)
    m = SpecSeqMorphism.from_chain_map(SpectralSequence.from_filtered_complex(C), SpectralSequence.from_filtered_complex(Cp), theta)
    print("  ", check_comparison(m, 2))
