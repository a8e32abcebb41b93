"""Exact Newton-polygon computations for plane polynomials at infinity.

Motivic Milnor fibers and nearby cycles at infinity realized through their
Euler characteristics, λ invariants and bifurcation sets.
"""

from .algebra import AlgebraicScalar, AlgebraicValue, FieldTower, UniPoly
from .invariants import (
    bifurcation_report,
    critical_values,
    global_milnor_number,
    lambda_invariant,
    local_motive,
    milnor_fiber_at_infinity,
    nearby_cycles_at_infinity,
)
from .laurent import LaurentPoly
from .motives import ConsistencyError, MotiveExpr, euler_realization, normalize

__version__ = "0.1.0"

__all__ = [
    "AlgebraicScalar",
    "AlgebraicValue",
    "ConsistencyError",
    "FieldTower",
    "LaurentPoly",
    "MotiveExpr",
    "UniPoly",
    "bifurcation_report",
    "critical_values",
    "euler_realization",
    "global_milnor_number",
    "lambda_invariant",
    "local_motive",
    "milnor_fiber_at_infinity",
    "nearby_cycles_at_infinity",
    "normalize",
]
