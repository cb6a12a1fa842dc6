# Nuclei that only admit top, and the witness nucleus.
#
# Every nucleus f with f(a) = top only for a = top sits below xi, and their
# pointwise join reaches xi exactly.  For each pair b rather-below a the
# witness g(c) = join{x : x <= b v c and x ^ a <= c} is such a nucleus with
# b <= g(a).
from subfit.frames import enumerate_Fn, pointwise_join, preceq_relation, witness_nucleus, xi_operator
from subfit.lattice import downset_corpus

for L in downset_corpus(3, max_lattice_size=7):
    fam = enumerate_Fn(L)
    joined = pointwise_join(fam)
    print(f"|L|={L.size}: {len(fam)} top-only nuclei, join == xi: {joined == xi_operator(L)}")

L = downset_corpus(3)[2]
rel = preceq_relation(L).rel
a, b = next((a, b) for a in range(L.size) for b in range(L.size) if rel[b, a] and not L.leq[b, a])
print(f"\n{L.labels[b]} is rather below {L.labels[a]}; witness nucleus:")
print(witness_nucleus(L, a, b))
