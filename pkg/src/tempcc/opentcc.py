"""Open temporal connected components.

A vertex set is an open tcc iff it is a bidirectional clique of the
reachability graph, so everything here works on the reachability graph.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Tuple

from .core import Setting, TemporalGraph
from .errors import InstanceTooLarge, NotAModulator
from .graphs import DiGraph, Graph, max_clique, to_mask
from .reachability import is_bidirectional_clique, reachability_graph, scc_partition
from .transitivity import find_violation, min_transitivity_modulator


@dataclass(frozen=True)
class TccResult:
    size: int
    witness: Tuple[int, ...]
    answer: bool


def _result(witness: Iterable[int], k: int) -> TccResult:
    w = tuple(sorted(witness))
    return TccResult(len(w), w, len(w) >= k)


def solve_with_modulator(
    dg: DiGraph, k: int, S: Iterable[int], stop_at_k: bool = False
) -> TccResult:
    """Largest bidirectional clique of ``dg`` given a transitivity modulator ``S``.

    Each bidirectional-clique subset S' of S is extended by the largest SCC
    among the non-modulator vertices that are mutually adjacent to all of S'.
    Subsets are visited by increasing size, then lexicographically.
    """
    if k < 1:
        raise ValueError("k must be positive")
    mod = sorted(set(S))
    rest = [v for v in range(dg.n) if v not in set(mod)]
    triple = find_violation(dg, rest)
    if triple is not None:
        raise NotAModulator(triple)

    mutual = dg.mutual_masks
    rest_mask = to_mask(rest)
    best: Tuple[int, ...] = ()
    for r in range(len(mod) + 1):
        for sub in combinations(mod, r):
            if not is_bidirectional_clique(dg, sub):
                continue
            common = rest_mask
            for x in sub:
                common &= mutual[x]
            block = scc_partition(dg, [v for v in rest if common >> v & 1]).largest()
            cand = sub + block
            if len(cand) > len(best):
                best = cand
                if stop_at_k and len(best) >= k:
                    return _result(best, k)
    return _result(best, k)


def solve(tg: TemporalGraph, s: Setting, k: int, stop_at_k: bool = False) -> TccResult:
    """Exact Open-TCC: reachability graph, minimum modulator, then subset extension."""
    dg = reachability_graph(tg, s)
    S = min_transitivity_modulator(dg)
    return solve_with_modulator(dg, k, S.vertices, stop_at_k=stop_at_k)


def mutual_graph(dg: DiGraph) -> Graph:
    """Undirected graph with ``{u, v}`` iff both ``(u, v)`` and ``(v, u)`` are arcs."""
    return Graph(dg.n, frozenset((u, v) for u, v in dg.arcs if u < v and dg.has_arc(v, u)))


def max_bidirectional_clique_bruteforce(dg: DiGraph, cap: int = 20, k: Optional[int] = None) -> TccResult:
    if dg.n > cap:
        raise InstanceTooLarge(f"n={dg.n} exceeds cap {cap}")
    witness = max_clique(mutual_graph(dg))
    return _result(witness, len(witness) if k is None else k)
