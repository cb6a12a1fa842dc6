# Rather-below preorder and the pre-nucleus xi on small distributive lattices.
#
# On a chain bot < m < top the element m is "rather below" bot: the only
# element that joins m up to top is top itself, and top also joins bot up to
# top.  So xi(bot) = m and the chain is not subfit.  Boolean lattices are
# subfit: there xi is the identity.
import numpy as np

from subfit.frames import is_nucleus, is_subfit, iterate_to_closure, preceq_relation, xi_operator
from subfit.lattice import boolean_lattice, chain, load_lattice

L = load_lattice('{"elements":["bot","m","top"],"covers":[["bot","m"],["m","top"]]}')
rel = preceq_relation(L)
print("pairs rather-below but not below:",
      [p for p in rel.to_json() if not L.leq[L.index[p[0]], L.index[p[1]]]])
print("xi on the 3-chain:", xi_operator(L))
print("subfit?", is_subfit(L))

# On finite lattices xi is already a nucleus: one application reaches the fixed point.
for M in (chain(5), boolean_lattice(3)):
    x = xi_operator(M)
    print(f"{M.size}-element lattice: xi nucleus={is_nucleus(x)}, "
          f"closure steps={iterate_to_closure(x)[1]}, subfit={is_subfit(M)}")

# The preorder as a table, for inspection.
print(np.asarray(preceq_relation(chain(4)).rel, dtype=int))
