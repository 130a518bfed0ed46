"""Exact arithmetic: Q(q), polynomials over a field, truncated series."""

from fractions import Fraction as BigRat

from .poly import Poly, fraction_poly, poly_product
from .ratfunc import PoleError, RatFunc, as_ratfunc, evaluate, reduce, rsum, valuation_at_one
from .series import TruncatedSeries, log_series_at_one

__all__ = [
    "BigRat",
    "Poly",
    "PoleError",
    "RatFunc",
    "TruncatedSeries",
    "as_ratfunc",
    "evaluate",
    "fraction_poly",
    "log_series_at_one",
    "poly_product",
    "reduce",
    "rsum",
    "valuation_at_one",
]
