"""Spectral statistics of quantum graphs reduced to exact combinatorics."""

from .exact import binomial, nq
from .graph import QuantumGraph, assemble_s, complete_graph
from .ring import RingGraph, RingParams, k_exact, k_po_quarter

__all__ = [
    "QuantumGraph",
    "RingGraph",
    "RingParams",
    "assemble_s",
    "binomial",
    "complete_graph",
    "k_exact",
    "k_po_quarter",
    "nq",
]
