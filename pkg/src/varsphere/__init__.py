"""Rigidity of frameworks on concentric spheres with independently variable radii.

Two independent routes to every verdict: exact ranks of rigidity matrices at
sampled rational points, and count-matroid oracles on the coloured graph.
"""
from .counts import is_sparse, is_tight, matroid_rank, sparsity_check
from .covers import cover_rank
from .graphs import ColouredGraph, parse_graph, serialize_graph
from .rigidity import Framework, analyze, build_rigidity_matrix, trivial_motion_basis
from .symmetry import (GainGraph, corollary_counts, lift, quotient, symmetric_analyze)

__all__ = [
    "ColouredGraph", "parse_graph", "serialize_graph",
    "sparsity_check", "is_sparse", "is_tight", "matroid_rank", "cover_rank",
    "Framework", "analyze", "build_rigidity_matrix", "trivial_motion_basis",
    "GainGraph", "quotient", "lift", "symmetric_analyze", "corollary_counts",
]

__version__ = "0.1.0"
