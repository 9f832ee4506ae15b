"""Temporal reachability graphs and static directed-graph utilities."""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Set, Tuple

from .core import Setting, TemporalGraph
from .graphs import DiGraph, bits, to_mask

__all__ = [
    "DiGraph",
    "SccPartition",
    "reachable_set",
    "reachability_graph",
    "scc_partition",
    "is_bidirectional_clique",
]

_UNREACHED = float("inf")


def _check_setting(tg: TemporalGraph, s: Setting) -> None:
    if s.directed != tg.directed:
        raise ValueError(f"setting is {s.name} but temporal graph is {'directed' if tg.directed else 'undirected'}")


def _timestep_adjacency(tg: TemporalGraph) -> List[Tuple[int, Dict[int, List[int]]]]:
    steps = []
    for t in sorted(tg.snapshots):
        adj: Dict[int, List[int]] = {}
        for u, v in tg.snapshots[t]:
            adj.setdefault(u, []).append(v)
            if not tg.directed:
                adj.setdefault(v, []).append(u)
        steps.append((t, adj))
    return steps


def _sweep(n: int, steps, strict: bool, source: int) -> Set[int]:
    # arrival[v]: earliest timestep at which v is reached; source counts as 0
    arrival = [_UNREACHED] * n
    arrival[source] = 0
    for t, adj in steps:
        if strict:
            # a vertex first reached at t cannot leave again at t
            hits = [w for u, ws in adj.items() if arrival[u] < t for w in ws]
            for w in hits:
                if arrival[w] > t:
                    arrival[w] = t
        else:
            stack = [u for u in adj if arrival[u] <= t]
            while stack:
                u = stack.pop()
                for w in adj.get(u, ()):
                    if arrival[w] > t:
                        arrival[w] = t
                        stack.append(w)
    return {v for v in range(n) if v != source and arrival[v] != _UNREACHED}


def reachable_set(tg: TemporalGraph, s: Setting, source: int) -> Set[int]:
    """Vertices other than ``source`` reachable from it by a temporal path."""
    _check_setting(tg, s)
    if not 0 <= source < tg.n:
        raise ValueError(f"source {source} out of range for n={tg.n}")
    return _sweep(tg.n, _timestep_adjacency(tg), s.strict, source)


def reachability_graph(tg: TemporalGraph, s: Setting) -> DiGraph:
    _check_setting(tg, s)
    steps = _timestep_adjacency(tg)
    arcs = frozenset(
        (u, v) for u in range(tg.n) for v in _sweep(tg.n, steps, s.strict, u)
    )
    return DiGraph(tg.n, arcs)


@dataclass(frozen=True)
class SccPartition:
    blocks: Tuple[Tuple[int, ...], ...]
    component: Tuple[Optional[int], ...]

    def largest(self) -> Tuple[int, ...]:
        """First block of maximum size (blocks are ordered by smallest vertex)."""
        best: Tuple[int, ...] = ()
        for b in self.blocks:
            if len(b) > len(best):
                best = b
        return best


def scc_partition(dg: DiGraph, vertices: Optional[Iterable[int]] = None) -> SccPartition:
    """Strongly connected components of ``dg`` (or of ``dg[vertices]``).

    Iterative Tarjan. Blocks are sorted internally and ordered by their
    smallest vertex; ``component[v]`` is None for vertices outside the subset.
    """
    alive = to_mask(range(dg.n)) if vertices is None else to_mask(vertices)
    succ = [list(bits(m & alive)) for m in dg.out_masks]
    index: Dict[int, int] = {}
    low: Dict[int, int] = {}
    on_stack: Set[int] = set()
    stack: List[int] = []
    found: List[List[int]] = []
    counter = 0
    for root in bits(alive):
        if root in index:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, i = work[-1]
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, 0))
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                block = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    block.append(w)
                    if w == v:
                        break
                found.append(sorted(block))
    found.sort(key=lambda b: b[0])
    component: List[Optional[int]] = [None] * dg.n
    for cid, block in enumerate(found):
        for v in block:
            component[v] = cid
    return SccPartition(tuple(tuple(b) for b in found), tuple(component))


def is_bidirectional_clique(dg: DiGraph, S: Iterable[int]) -> bool:
    members = list(S)
    mask = to_mask(members)
    mutual = dg.mutual_masks
    return all(mask & ~(1 << v) & ~mutual[v] == 0 for v in members)
