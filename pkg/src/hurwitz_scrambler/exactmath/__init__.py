"""Exact rational arithmetic: polynomials, rational functions, matrices."""

from .matrix import Matrix, NegativeEntry, NotSquare
from .parser import ExpressionSyntaxError, parse_rational_function
from .polynomial import Polynomial, ZeroPolynomial, poly_gcd, squarefree_decompose
from .ratfunc import (
    CUSPS,
    BinaryForm,
    ConstantFunction,
    Cusp,
    DivisionByZeroFunction,
    RationalFunction,
    fiber_form,
)

__all__ = [
    "CUSPS",
    "BinaryForm",
    "ConstantFunction",
    "Cusp",
    "DivisionByZeroFunction",
    "ExpressionSyntaxError",
    "Matrix",
    "NegativeEntry",
    "NotSquare",
    "Polynomial",
    "RationalFunction",
    "ZeroPolynomial",
    "fiber_form",
    "parse_rational_function",
    "poly_gcd",
    "serialize_rational_function",
    "squarefree_decompose",
]


def serialize_rational_function(f: RationalFunction, var: str = "x") -> str:
    return f.to_str(var)
