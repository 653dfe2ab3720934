"""Residues of two-forms on bivariate Laurent series and their coordinate dependence."""

from surfcodes import laurent as L
from surfcodes.cli import residue_demo
from surfcodes.rings import QQ

for name, value in residue_demo():
    print(f"{name}: {value}")

# res2 is invariant under admissible changes of variables
w = L.Form2(L.parse_series("u^-2*v^-1 + 3*u^-1*v^-1 + u*v", QQ), ("u", "v"))
cv = L.ChangeOfVars(L.parse_series("x + x^2 + x*y", QQ, ("x", "y")), L.parse_series("y + x*y", QQ, ("x", "y")))
print("res2 before", L.res2(w), "after", L.res2(L.apply_cv(w, cv)))

# exact forms d(A dB) have no two-residue
A = L.parse_series("u^-1 + v", QQ)
B = L.series_inv(L.parse_series("1 + u + v^2", QQ))
print("res2 of dA^dB:", L.res2_of_exact_form(A, B))
