"""Exact algorithms for temporal connected components and distance to transitivity."""

from .core import ALL_SETTINGS, Setting, TemporalGraph, is_proper, is_simple, parse_temporal_graph, serialize_temporal_graph, underlying_graph
from .graphs import DiGraph, Graph
from .opentcc import TccResult, max_bidirectional_clique_bruteforce, solve, solve_with_modulator
from .reachability import is_bidirectional_clique, reachability_graph, reachable_set, scc_partition
from .transitivity import ArcModSet, Modulator, arc_addition_set, find_violation, min_arc_modification_set, min_transitivity_modulator

__version__ = "0.1.0"
