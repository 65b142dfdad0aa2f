"""Quotient-ring spectra next to numerically solved representation varieties.

Run with ``python3 demos/quotients_and_varieties.py``.
"""
from floerkit.groebner import alpha_spectrum, groebner, mult_operator, q_model_ideal, top_eigenspace_ideal
from floerkit.repvariety import expected_dimension, solve
from floerkit.tables import ahi_product, spectrum, thurston_bound

for g, n in [(0, 3), (1, 3), (2, 5)]:
    ideal = q_model_ideal(g, n)
    qb = groebner(ideal)
    rep = alpha_spectrum(ideal)
    print(f"(g,n)=({g},{n}) quotient dim {qb.dimension}, alpha spectrum {[str(v) for v in sorted(rep.values)]}")
    print(f"    top eigenspace quotient dim {groebner(top_eigenspace_ideal(g, n)).dimension}")
ideal = q_model_ideal(1, 3)
matrix = mult_operator(ideal, ideal.table.var("alpha"))
print("alpha on the (1,3) quotient:", [[str(v) for v in row] for row in matrix])

print()
for g, n, eps in [(0, 3, 1), (0, 3, -1), (1, 3, 1), (0, 5, 1)]:
    x, rep = solve(g, n, eps, seed=0)
    print(f"R({g},{n}) eps={eps:+d}: residual {rep.residual:.1e}, "
          f"dimension {rep.quotient_dim} (formula {expected_dimension(g, n)})")

print()
print("U(1,3) eigenvalues:", spectrum("U", 1, 3).values)
print("AHI of the 4-strand product link:", ahi_product(4))
print("bound from surfaces (0,5), (1,1):", thurston_bound([(0, 5), (1, 1)]).bound)
