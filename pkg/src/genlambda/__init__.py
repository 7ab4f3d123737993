"""Exact q-expansion engine for generalized lambda modular functions.

Core objects: CycNum (cyclotomic field element), QSeries (truncated Laurent
series in q over K_N), SL2Mat (integer modular-group matrix), BivarPoly
(the minimal polynomial F(X, Y) of the lambda function over K_N(j)).
"""

from .cyclotomic import CycNum, CycContext, get_context, cyclotomic_polynomial
from .qseries import QSeries

__version__ = "0.1.0"

__all__ = [
    "CycNum",
    "CycContext",
    "QSeries",
    "get_context",
    "cyclotomic_polynomial",
    "__version__",
]
