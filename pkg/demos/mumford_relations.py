"""Walk through the xi recursion and the Mumford relations it produces.

Run with ``python3 demos/mumford_relations.py``.
"""
from floerkit.mumford import alpha_reduction, closed_form_oracle, mumford_relation, xi

# The first few xi_{k,3}: (k+1) xi_{k+1} = alpha xi_k + (1-k) beta xi_{k-1} - (gamma/2) xi_{k-2}
for k in range(6):
    print(f"xi_{k},3 = {xi(k, 3).pretty()}")

print()
# Normalised relations f = (g+m)! xi_{g+m,n}; every one is monic in alpha.
for n in (3, 5):
    for g in range(4):
        f = mumford_relation(g, n)
        print(f"g={g} n={n}: f = {f.pretty()}")

print()
# At beta = 2, gamma = 0 the relation becomes a polynomial in alpha alone;
# its roots are the eigenvalues of multiplication by alpha on the model quotient.
import numpy as np

coeffs = alpha_reduction(mumford_relation(3, 3))
print("f(alpha; beta=2, gamma=0) coefficients (low->high):", [str(c) for c in coeffs])
print("roots:", np.round(np.sort(np.roots([float(c) for c in reversed(coeffs)]).real), 10))

print()
rep = closed_form_oracle(30, 5)
print(f"partial sums vs closed form, n=5: max residual {rep.max_residual:.2e}, passed={rep.passed}")
