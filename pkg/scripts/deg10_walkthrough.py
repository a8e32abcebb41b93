"""
Bifurcation values of a degree-ten plane polynomial
===================================================

Walk through the full pipeline on one polynomial: its Newton polygon at
infinity, the Newton trees, the generic fiber, and the atypical values.
"""

from newtonmot import LaurentPoly, bifurcation_report, milnor_fiber_at_infinity
from newtonmot.cli import parse_polynomial, value_string
from newtonmot.lattice import polygon_infinity
from newtonmot.newton_algo import newton_algorithm_infinity

f = parse_polynomial(
    "x^6*y^4 + (4*x^5+3*x^4)*y^3 + (6*x^4+11*x^3+3*x^2)*y^2"
    " + (4*x^3+13*x^2+2*x+1)*y + x^2 + 5*x + 1"
)
print("f =", f)

# The polygon at infinity: two edges away from the origin.
for face in polygon_infinity(f).edges():
    print(face.label(), "N =", face.N)

# Newton algorithm at infinity for a few fibers f - c.
for c in (0, 1, 2):
    leaves = [leaf.base for leaf in newton_algorithm_infinity(f - c).leaves()]
    print(f"c = {c}: leaves {leaves}")

# Euler characteristic of the generic fiber, summand by summand.
mfi = milnor_fiber_at_infinity(f)
for term in mfi.terms:
    print(f"  {term.label:50s} chi = {term.weight * term.chi}")
print("chi_generic =", mfi.chi)

# Candidates, lambda at each one, and the balance 1 - chi = mu + lambda.
rep = bifurcation_report(f)
for cand in rep.candidates:
    print(value_string(cand.value), cand.tags, "lambda =", cand.lam)
print("B^top =", [value_string(v) for v in rep.b_top])
print("mu =", rep.mu_groebner, " lambda =", rep.lambda_total, " 1 - chi =", 1 - rep.chi_generic)
