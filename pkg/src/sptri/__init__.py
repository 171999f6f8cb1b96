"""Triangular subgroups of Sp(2,R): group arithmetic in the parabolic Q,
the (Sigma, H, tau) model, canonical forms and the conjugacy classifier."""

from .canonical import MA_CATALOG, ma_reduce, sylvester_reduce
from .families import INF, HFamily, family
from .matrix import Mat, parse_matrix
from .parabolic import QElement, g
from .spclassify import conjugacy_witness, sp_classify
from .triple import SymSpan, Triple, load_spec, loads_spec

__version__ = "0.1.0"

__all__ = [
    "INF", "MA_CATALOG", "HFamily", "Mat", "QElement", "SymSpan", "Triple", "conjugacy_witness",
    "family", "g", "load_spec", "loads_spec", "ma_reduce", "parse_matrix", "sp_classify", "sylvester_reduce",
]
