"""Drawing the E^1 page of the EHP spectral sequence.

Rows are the stem-like index i, columns the filtration m. Entries below the
line i = 2n - 1 + m vanish; entries in the zero stem resolve to Z, GW or a
Milnor-Witt K-group, and the rest are left as named homotopy sheaves.
"""

from ehpkit import NONREAL, Z, TableParams, e1_entry, render_table, run

print(render_table(TableParams(2, 1, 2), 10, 4, "text"))

# Same sphere with all primes and a non-real field: the unit condition now holds.
print(render_table(TableParams(2, 1, 2, primes=Z, field=NONREAL), 6, 3, "text"))

lab = e1_entry(5, 1, 2, 1, 2)
print("one entry as JSON:", lab.to_json())

# The truncated sequence stops after n2 - n1 columns.
print()
print(render_table(TableParams(2, 1, 2, n2=4), 8, 4, "text"))

# Everything above is also reachable from the command line:
print("$ python -m ehpkit ehp condition --n 3 --q 0")
run(["ehp", "condition", "--n", "3", "--q", "0"])
