"""Conjugacy classes of solvable cube-free p'-subgroups of GL(2,q).

Closed-form class counts, explicit class representatives, and a brute-force
oracle that checks both at small q.
"""

from .classifier import classify, is_isomorphic, is_solvable, sylow_shape_of
from .counting import CountResult, burnside_count_reducible, count_imprimitive, count_primitive, count_reducible
from .finite_field import FieldDesc, FieldElem, element_of_order, element_order, field_of_order, make_field
from .matgroup import Mat, MatGroup, closure, gl_order, standard_subgroups
from .shapes import Geo, GroupShape, SylowShape, abelian_shape, reducible_shapes

__version__ = "0.1.0"

__all__ = [
    "classify",
    "is_isomorphic",
    "is_solvable",
    "sylow_shape_of",
    "CountResult",
    "burnside_count_reducible",
    "count_imprimitive",
    "count_primitive",
    "count_reducible",
    "FieldDesc",
    "FieldElem",
    "element_of_order",
    "element_order",
    "field_of_order",
    "make_field",
    "Mat",
    "MatGroup",
    "closure",
    "gl_order",
    "standard_subgroups",
    "Geo",
    "GroupShape",
    "SylowShape",
    "abelian_shape",
    "reducible_shapes",
]
