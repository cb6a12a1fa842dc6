# The space omega x omega+ where xi is not idempotent.
#
# Opens are described row by row.  Any open with only finite rows is rather
# below the empty set, so xi(empty) fills every omega row: omega x omega.
# That set has cofinitely many full rows, which lets the star row grow too,
# so xi applied again gives the whole space.
from subfit.curious import (
    BOTTOM,
    basic_row_open,
    demonstrate_not_nucleus,
    profile_preceq,
    profile_xi,
    xi_approximant,
)

print("[0,5) x {2} rather below empty:", profile_preceq(basic_row_open(2, 5), BOTTOM))
print("omega x {2} rather below empty:", profile_preceq(basic_row_open(2, float("inf")), BOTTOM))
for k in (1, 3, 6):
    print(f"an open rather below empty, height {k}:", xi_approximant(BOTTOM, k, k).to_json())

x1 = profile_xi(BOTTOM)
x2 = profile_xi(x1)
print("xi(empty)   =", x1.to_json())
print("xi^2(empty) =", x2.to_json())

rep = demonstrate_not_nucleus(samples=2000, seed=1)
print("law checks:", rep.checks, "failures:", len(rep.failures))
