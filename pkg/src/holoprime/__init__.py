"""Exact exterior-algebra toolkit for prime and complete prime subspaces."""

from .algebra import Form, blades, colex_index, hodge_star, inner_product, volume, wedge
from .linalg import LinearMap, QuotientSpace, Subspace, span
from .operators import eigenspace, mult_map, rank_two_form, t_operator

__version__ = "0.1.0"
