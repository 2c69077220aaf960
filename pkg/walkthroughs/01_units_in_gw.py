"""When is (m+1) + m*e a unit?

The twist class e = (-1)^(n+q) <-1>^q of the sphere S^(n + q alpha) decides
whether the EHP comparison map can be inverted. This walk tabulates the unit
test over a few coefficient rings and both kinds of field.
"""

from ehpkit.ehp import coefficient_ring
from ehpkit import NONREAL, REAL, Z, Z2, PrimeSet, gw_is_unit, gw_unit_family_holds, twist_class, unit_family_element

print("twist classes of small spheres (n, q) -> e")
for n in range(1, 4):
    print("  ", [f"({n},{q}): {twist_class(n, q, Z)}" for q in range(4)])

print("\nintegrally, the first few members of the family for S^(2 + 1 alpha):")
e = twist_class(2, 1, Z)
for m in range(4):
    x = unit_family_element(m, e)
    print(f"  m={m}: {x}  unit over a real field: {gw_is_unit(x, REAL)}, non-real: {gw_is_unit(x, NONREAL)}")

# Localized at 2 every odd integer is invertible, so the family always survives.
# Keeping an odd prime p in P makes m = (p-1)/2 the first failure.
print("\nunit condition for every m, by coefficient ring (sphere S^(2+0 alpha), real field):")
for P in (Z2, PrimeSet.of(2, 3), PrimeSet.of(2, 5), Z):
    print(f"  {coefficient_ring(P)}: {gw_unit_family_holds(twist_class(2, 0, P), P, REAL)}")
