"""Exact algebra of superfat points, apolarity and secant varieties."""
from .fields import GF, QQ, QQI, Gaussian, ModP, field_from_tag
from .grobner import (
    Ideal, ideal_contains, ideal_equal, ideal_intersection, krull_dimension,
    quotient_dimension, truncated_intersection,
)
from .ioparse import format_ideal, format_polynomial, make_ring, parse_ideal, parse_polynomial
from .polyring import GradedPiece, Polynomial, PolyRing
from .zerodim import (
    hypercube_ideal, length_at_origin, superfat_hull, symmetry_degree, two_superfat_square_form,
    union_of_squares_check,
)
from .apolarity import catalecticant, perp_space, qq_monomialize, span_membership, tau2_normal_form
from .secants import fill_degree_check, secant_dimension, tangent_span

__version__ = "0.1.0"
