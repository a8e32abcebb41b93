"""
A polynomial with no critical points and one atypical value
===========================================================

f = x(xy - 1) is a submersion, yet its fiber over 0 is special: the
Milnor number at infinity jumps there.
"""

from newtonmot import bifurcation_report, lambda_invariant, nearby_cycles_at_infinity
from newtonmot.cli import parse_polynomial
from newtonmot.newton_algo import dicritical_faces, newton_bifurcation_candidates

f = parse_polynomial("x*(x*y - 1)")

# The segment from (2, 1) to the origin is a dicritical face at infinity.
for d in dicritical_faces(f, "infinity"):
    print("dicritical face", d.face.vertices, "P =", d.P, "smooth:", d.smooth)
print("candidates:", newton_bifurcation_candidates(f))

near = nearby_cycles_at_infinity(f, 0)
print("nearby cycles at infinity over 0:", near.motive, " chi =", near.chi)
for c in (0, 1, -3, 7):
    print(f"lambda_{c} =", lambda_invariant(f, c))

rep = bifurcation_report(f)
print("critical values:", rep.critical, " B^top:", rep.b_top)
