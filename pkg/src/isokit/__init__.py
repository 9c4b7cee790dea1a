"""Graph isomorphism toolkit: refinement, permutation groups, string isomorphism."""

__version__ = "0.1.0"

from .errors import Graph6Error, GraphFormatError, RecursionGuardError, ResourceLimitError
from .graph import ColoredGraph, Coloring
from .io import parse_graph6, emit_graph6, parse_json_graph, emit_json_graph, read_graph, read_graphs
from .refinement import color_refine, refine_stable, wl_k, distinguishes
from .perm import Perm, PermGroup, Hom, Coset, BlockSystem
from .strings import GString, SIInstance, luks_string_iso, gi_to_si
from .search import aut, iso
from .tcr import closure, tcr_stable, is_tcr_bounded
from .flow import k_improvement

__all__ = [
    "__version__",
    "Graph6Error", "GraphFormatError", "RecursionGuardError", "ResourceLimitError",
    "ColoredGraph", "Coloring",
    "parse_graph6", "emit_graph6", "parse_json_graph", "emit_json_graph", "read_graph", "read_graphs",
    "color_refine", "refine_stable", "wl_k", "distinguishes",
    "Perm", "PermGroup", "Hom", "Coset", "BlockSystem",
    "GString", "SIInstance", "luks_string_iso", "gi_to_si",
    "aut", "iso",
    "closure", "tcr_stable", "is_tcr_bounded",
    "k_improvement",
]
