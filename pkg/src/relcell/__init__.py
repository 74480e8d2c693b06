"""Exact-arithmetic engine for relative cellular algebras.

Submodules: field, linalg, algebra, celldata (the generic pipeline),
zigzag, usl2, diagrams/annular (the concrete families), families, cli.
"""

__version__ = "0.1.0"

from .algebra import AlgebraTable, BasisLabel, Element
from .celldata import CellDatum, cartan_matrix, decomposition_matrix, simple_set, verify_cell_datum
from .field import PrimeField, QQ, Rationals

__all__ = [
    "AlgebraTable",
    "BasisLabel",
    "CellDatum",
    "Element",
    "PrimeField",
    "QQ",
    "Rationals",
    "cartan_matrix",
    "decomposition_matrix",
    "simple_set",
    "verify_cell_datum",
    "__version__",
]
