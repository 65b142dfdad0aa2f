"""Chern classes of R^1 from the Kunneth fiber algebra, compared with the closed form.

Run with ``python3 demos/chern_pipeline.py``.
"""
from floerkit.chern import (
    FiberAlgebraElement,
    r1_closed_form_check,
    r1_rank,
    r1_series,
    slant_corollary_sides,
)

D, Psi = FiberAlgebraElement.D(), FiberAlgebraElement.Psi()
print("D^2       =", D * D)
print("Psi^2     =", Psi * Psi)
print("D Psi     =", D * Psi)
print("(D+Psi)^2 =", (D + Psi) * (D + Psi))

print()
for g, m in [(0, 1), (1, 1), (2, 1)]:
    coeffs = r1_series(g, m, order=6)
    print(f"g={g} m={m} rank {r1_rank(g, m)}")
    for k, c in enumerate(coeffs[:5]):
        print(f"   t^{k}: {c.pretty()}")

print()
lhs, rhs = slant_corollary_sides(2, 8)
print("slant identity, g=2, order 8, sides equal:", lhs == rhs)

print()
for g, m, T in [(0, 1, 10), (1, 2, 10)]:
    rep = r1_closed_form_check(g, m, T)
    print(f"closed-form check g={g} m={m} T={T}: max relative residual {rep.max_residual:.2e}")
