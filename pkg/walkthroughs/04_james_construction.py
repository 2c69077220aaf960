"""The James construction on spheres, built simplicially.

J_n(X) is made of reduced words of at most n letters. Its homology should look
like a sum of smash powers of X, and the combinatorial James-Hopf map j_2
should agree with collapsing J_2 onto its top filtration quotient.
"""

import time

from ehpkit import S1, S2, S2vS2, check_simplicial_identities, homology, j2_matches_quotient_on_chains, james_truncated

for X in (S1, S2):
    for n in (1, 2, 3):
        J = james_truncated(X, n)
        cap = n * X.max_dim
        res = homology(J, cap)
        groups = ", ".join(f"H{d}={g}" for d, g in enumerate(res.groups))
        print(f"J_{n}({X.name}): {groups}  (simplices per degree {res.counts})")

t = time.perf_counter()
rep = check_simplicial_identities(james_truncated(S2vS2, 3), 5)
print(f"\nsimplicial identities on J_3(S2 v S2) through degree 5: {'ok' if rep.ok else rep.failures} ({time.perf_counter() - t:.1f}s)")

for X in (S1, S2, S2vS2):
    print(f"j_2 on J_2({X.name}) equals the quotient to X^2:", j2_matches_quotient_on_chains(X, 2 * X.max_dim))
