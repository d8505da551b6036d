"""Multiplicities of polynomials along trajectories of polynomial vector fields, and bounds for them."""
from .algebra import (LaurentPolynomial, PolyVectorField, field_polytope, lie_derivative, mixed_degrees,
                      newton_polytope, parse_field, parse_polynomial)
from .bounds import (BoundReport, a_const, b_const, caseAB_bound, delta_nxi, mixed_multi_bound, mixed_single_bound,
                     nmorse_bound, pure_bound, toric_bound)
from .errors import MultboundError
from .mult import MultiplicityResult, multiplicity, multiplicity_sum, rolle_order_check
from .polytope import IntegralPolytope, hull, lattice_count, mixed_volume, quermassintegral, volume
from .series import (FuchsianExpansion, RationalExpansion, RegularExpansion, TrajectoryGerm, expand_fuchsian,
                     expand_rational, expand_regular, residual_check)

__version__ = "0.1.0"
