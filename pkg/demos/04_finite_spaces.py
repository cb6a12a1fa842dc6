# Finite spaces: the point criterion for rather-below, and Spec D.
#
# In a space, U is rather below W iff no point of U \ W has its closure
# inside U.  We compare that with the lattice definition on the frame of
# opens for every topology on three points.
import itertools

from subfit.frames import preceq_relation
from subfit.lattice import chain
from subfit.topology import (
    enumerate_spaces,
    is_jacobson_space,
    opens_frame,
    point_closure,
    preceq_points,
    sierpinski,
    spec_space,
)

S = sierpinski()
print("Sierpinski closures:", {S.labels[p]: sorted(S.labels[q] for q in point_closure(S, p))
                               for p in range(S.size)})
print("Sierpinski Jacobson?", is_jacobson_space(S))

agree = total = 0
for T in enumerate_spaces(3):
    rel = preceq_relation(opens_frame(T)).rel
    for (i, u), (j, w) in itertools.product(enumerate(T.sorted_opens), repeat=2):
        total += 1
        agree += preceq_points(T, u, w) == rel[i, j]
print(f"point criterion vs lattice definition: {agree}/{total} pairs agree")

spec = spec_space(chain(3))
print("Spec of the 3-chain:", spec, "opens:", sorted(sorted(u) for u in spec.opens))
