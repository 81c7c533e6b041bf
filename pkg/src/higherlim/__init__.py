"""Exact computation of higher limits of functors on finite filtered posets."""

from .bounds import BoundsReport, inductive_check, vanishing_bounds
from .complex import (MINUS_INF, ChainMap, CochainComplex, cohomology_dims, height, is_quasi_iso,
                      is_truncatable, mapping_cocylinder, truncated_mapping_cocylinder)
from .diagram import (Case, ComplexDiagram, FibrantReplacement, LimitPresentation, ModuleDiagram,
                      fibrant_replacement, higher_limits, is_locally_fibrant, limit_over, matching_map,
                      validate_functor)
from .exactla import GF, QQ, Field, Matrix, compose, is_epimorphism, rank, rank_and_kernel
from .oracle import oracle_higher_limits, order_cochain
from .poset import (Labelling, Poset, TreeDecomposition, build_poset, closes_circuit, is_filtered_tree,
                    labelling, maximal_tree, strict_down_set)
from .randgen import random_instance

__all__ = [
    "BoundsReport", "Case", "ChainMap", "CochainComplex", "ComplexDiagram", "FibrantReplacement", "Field",
    "GF", "Labelling", "LimitPresentation", "MINUS_INF", "Matrix", "ModuleDiagram", "Poset", "QQ",
    "TreeDecomposition", "build_poset", "closes_circuit", "cohomology_dims", "compose", "fibrant_replacement",
    "height", "higher_limits", "inductive_check", "is_epimorphism", "is_filtered_tree", "is_locally_fibrant",
    "is_quasi_iso", "is_truncatable", "labelling", "limit_over", "mapping_cocylinder", "matching_map",
    "maximal_tree", "oracle_higher_limits", "order_cochain", "random_instance", "rank", "rank_and_kernel",
    "strict_down_set", "truncated_mapping_cocylinder", "validate_functor", "vanishing_bounds",
]
