"""Exact verification of quadratic transformations in the (q-)Askey scheme."""

from .scalar import GaussRat, QBase, parse_scalar
from .poly import Polynomial1, SymLaurent1, Poly2, Laurent2, DominancePoly2
from .families1 import FamilySpec, make_polynomial, evaluate

__all__ = [
    "GaussRat",
    "QBase",
    "parse_scalar",
    "Polynomial1",
    "SymLaurent1",
    "Poly2",
    "Laurent2",
    "DominancePoly2",
    "FamilySpec",
    "make_polynomial",
    "evaluate",
]
