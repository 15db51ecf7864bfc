"""Exact arithmetic: polynomials and rational functions over Q."""

from .poly import Poly, poly_gcd
from .ratfunc import RatFunc, evaluate_ratfunc, normalize_ratfunc, ratfunc_arith
from .serialize import (
    poly_from_json,
    poly_from_text,
    poly_to_json,
    poly_to_text,
    ratfunc_from_json,
    ratfunc_from_text,
    ratfunc_to_json,
    ratfunc_to_text,
)

__all__ = [
    "Poly",
    "RatFunc",
    "evaluate_ratfunc",
    "normalize_ratfunc",
    "poly_from_json",
    "poly_from_text",
    "poly_gcd",
    "poly_to_json",
    "poly_to_text",
    "ratfunc_arith",
    "ratfunc_from_json",
    "ratfunc_from_text",
    "ratfunc_to_json",
    "ratfunc_to_text",
]
