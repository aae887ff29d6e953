"""Expected length of Terracini schemes of curves, computed symbolically."""

from .chow import Context, ProdClass, SymClass, eval_top, exp_class, pushforward
from .chern import ChernVector, chern_exp, chern_newton, inverse_series
from .grr import ChCharacter, ch_EC_closed, ch_EC_grr
from .poly import Poly, falling_factorial, poly_substitute, symbols
from .porteous import TerraciniFormula, terracini_class, terracini_formula

__all__ = [
    "ChCharacter", "ChernVector", "Context", "Poly", "ProdClass", "SymClass",
    "TerraciniFormula", "ch_EC_closed", "ch_EC_grr", "chern_exp", "chern_newton",
    "eval_top", "exp_class", "falling_factorial", "inverse_series", "poly_substitute",
    "pushforward", "symbols", "terracini_class", "terracini_formula",
]
__version__ = "0.1.0"
