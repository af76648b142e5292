"""Exact commutative algebra: Laurent polynomials, multivariate rings,
monomial orders, and a budgeted Groebner engine."""

from .ideals import (
    Budget,
    BudgetError,
    DEFAULT_BUDGET,
    Ideal,
    buchberger,
    eliminate,
    fresh_name,
    groebner,
    ideal_sum,
    intersect,
    member,
    radical_member,
    reduce_poly,
    saturate,
    spoly,
)
from .laurent import LaurentFrac, LaurentPoly, frac_pow, ord0, val
from .multipoly import GREVLEX, LEX, MonomialOrder, MultiPoly
from .parser import (
    ParseError,
    format_laurent,
    format_multi,
    format_rational,
    parse_laurent,
    parse_multi,
    parse_rational,
)

__all__ = [
    "Budget",
    "BudgetError",
    "DEFAULT_BUDGET",
    "GREVLEX",
    "Ideal",
    "LEX",
    "LaurentFrac",
    "LaurentPoly",
    "MonomialOrder",
    "MultiPoly",
    "ParseError",
    "buchberger",
    "eliminate",
    "format_laurent",
    "format_multi",
    "format_rational",
    "frac_pow",
    "fresh_name",
    "groebner",
    "ideal_sum",
    "intersect",
    "member",
    "ord0",
    "parse_laurent",
    "parse_multi",
    "parse_rational",
    "radical_member",
    "reduce_poly",
    "saturate",
    "spoly",
    "val",
]
