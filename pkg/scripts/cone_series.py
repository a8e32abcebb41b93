"""
Rational series over lattice cones
==================================

Sum L^(-eta(k)) T^(phi(k)) over the lattice points of a rational cone,
expand it, and take the limit as T goes to infinity.
"""

from newtonmot.lattice import Cone, cone_euler
from newtonmot.motives import cone_series, limit_T_infinity

phi, eta = (1, 1), (1, 0)
for kind, gens in [("ray", ((1, 2),)), ("open2D", ((1, 0), (1, 3))), ("halfopen2D", ((1, 0), (1, 3)))]:
    C = Cone(kind, gens)
    s = cone_series(phi, eta, C)
    print(kind, gens)
    print("  closed form:", s)
    print("  first terms:", s.expand(4))
    print("  limit:", limit_T_infinity(s), " cone_euler:", cone_euler(C))
