# Ideals, spectra and the Heitmann quotient D/≡.
#
# For the 3-chain the prime ideals are ↓bot and ↓m, and only ↓m is maximal,
# so the lattice is not Jacobson.  The congruence ≡ glues bot and m, and the
# quotient is the 2-element chain, which is Jacobson; accordingly chi = xi.
import json

from subfit.ideals import (
    check_chi_characterisation,
    check_top_lemma,
    enumerate_congruences,
    heitmann_congruence,
    is_jacobson,
    jacobson_conditions,
    quotient,
    spectrum_report,
)
from subfit.lattice import chain, downset_corpus

D = chain(3)
print(json.dumps(spectrum_report(D), indent=1))

print("\ncongruences of the 3-chain:", [c.to_json() for c in enumerate_congruences(D)])
print("top lemma:", check_top_lemma(D), " chi characterisation:", check_chi_characterisation(D))

# Jacobson verdicts across the corpus, with the quotient's verdict alongside.
for L in downset_corpus(3):
    q = quotient(L, heitmann_congruence(L)).lattice
    conds = jacobson_conditions(L)
    print(f"|D|={L.size:2}  jacobson={is_jacobson(L)!s:5}  |D/≡|={q.size:2}  "
          f"D/≡ jacobson={is_jacobson(q)}  conditions={sorted(set(conds.values()))}")
