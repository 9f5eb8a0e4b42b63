from .fields import (Automorphism, Field, FieldElement, FieldError, GF, QQ, apply_galois,
                     field_from_spec, make_field)
from .poly import Poly, gcd_many, poly_gcd, poly_lcm
from .ratfun import RatFunField, RationalFunction, ratfun_normalize
from .linalg import (det, identity, inverse, mat, matmul, matvec, nullspace, pgl_equal,
                     rank, solve, transpose)
from .parse import parse_element, parse_expression

__all__ = [
    "Automorphism", "Field", "FieldElement", "FieldError", "GF", "QQ", "apply_galois",
    "field_from_spec", "make_field", "Poly", "gcd_many", "poly_gcd", "poly_lcm",
    "RatFunField", "RationalFunction", "ratfun_normalize", "det", "identity", "inverse",
    "mat", "matmul", "matvec", "nullspace", "pgl_equal", "rank", "solve", "transpose",
    "parse_element", "parse_expression",
]
