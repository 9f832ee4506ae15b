"""Transitivity violations, modulators and arc-modification sets."""

from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .graphs import Arc, DiGraph, bits, to_mask

Triple = Tuple[int, int, int]


@dataclass(frozen=True)
class Modulator:
    vertices: FrozenSet[int]

    @property
    def size(self) -> int:
        return len(self.vertices)

    def sorted(self) -> List[int]:
        return sorted(self.vertices)


@dataclass(frozen=True)
class ArcModSet:
    additions: FrozenSet[Arc] = frozenset()
    deletions: FrozenSet[Arc] = frozenset()
    endpoints: FrozenSet[int] = field(init=False)

    def __post_init__(self):
        if self.additions & self.deletions:
            raise ValueError("an arc cannot be both added and deleted")
        ends = {x for arc in self.additions | self.deletions for x in arc}
        object.__setattr__(self, "endpoints", frozenset(ends))

    @property
    def size(self) -> int:
        return len(self.additions) + len(self.deletions)

    def apply(self, dg: DiGraph) -> DiGraph:
        if self.additions & dg.arcs:
            raise ValueError("addition of an arc already present")
        if not self.deletions <= dg.arcs:
            raise ValueError("deletion of an absent arc")
        return DiGraph(dg.n, (dg.arcs | self.additions) - self.deletions)


def _violation(masks: Sequence[int], alive: int) -> Optional[Triple]:
    for u in bits(alive):
        out_u = masks[u] & alive
        for v in bits(out_u):
            missing = masks[v] & alive & ~out_u & ~(1 << u)
            if missing:
                return (u, v, (missing & -missing).bit_length() - 1)
    return None


def find_violation(dg: DiGraph, vertices: Optional[Iterable[int]] = None) -> Optional[Triple]:
    """Lexicographically smallest ``(u, v, w)`` with ``u->v``, ``v->w``, ``u != w``
    and no arc ``u->w``, or None if the graph (restricted to ``vertices``) is
    transitive."""
    alive = to_mask(range(dg.n)) if vertices is None else to_mask(vertices)
    return _violation(dg.out_masks, alive)


def is_transitive(dg: DiGraph) -> bool:
    return find_violation(dg) is None


def min_transitivity_modulator(dg: DiGraph) -> Modulator:
    """Minimum vertex set whose deletion leaves a transitive graph.

    Iterative deepening on the budget; at each violation ``(u, v, w)`` one of
    the three vertices must be deleted, tried in that order.
    """
    masks = dg.out_masks
    full = to_mask(range(dg.n))

    def search(alive: int, budget: int) -> Optional[int]:
        triple = _violation(masks, alive)
        if triple is None:
            return full & ~alive
        if budget == 0:
            return None
        for x in triple:
            found = search(alive & ~(1 << x), budget - 1)
            if found is not None:
                return found
        return None

    for budget in range(dg.n + 1):
        removed = search(full, budget)
        if removed is not None:
            return Modulator(frozenset(bits(removed)))
    raise AssertionError("deleting every vertex always yields a transitive graph")


def transitive_closure(dg: DiGraph) -> DiGraph:
    """Closure without self-loops (Warshall on bitsets)."""
    masks = list(dg.out_masks)
    for k in range(dg.n):
        kbit = 1 << k
        row = masks[k]
        for i in range(dg.n):
            if masks[i] & kbit:
                masks[i] |= row
    return DiGraph.from_masks([m & ~(1 << i) for i, m in enumerate(masks)])


def arc_addition_set(dg: DiGraph) -> ArcModSet:
    """The unique minimum addition-only set: closure arcs missing from ``dg``."""
    return ArcModSet(additions=transitive_closure(dg).arcs - dg.arcs)


def min_arc_modification_set(
    dg: DiGraph, budget: int, allow_additions: bool = True
) -> Optional[ArcModSet]:
    """Minimum arc-modification set of size at most ``budget``, else None.

    At a violation ``(u, v, w)`` branch on deleting ``(u, v)``, deleting
    ``(v, w)`` or adding ``(u, w)``. A branched arc is frozen in its new state
    for the whole subtree, so every arc is flipped at most once and the depth
    is bounded by the budget.
    """
    n = dg.n
    full = to_mask(range(n))

    def search(masks: List[int], frozen: FrozenSet[Arc], flipped: Tuple[Arc, ...], depth: int):
        triple = _violation(masks, full)
        if triple is None:
            return flipped
        if depth == 0:
            return None
        u, v, w = triple
        options = [(u, v), (v, w)]
        if allow_additions:
            options.append((u, w))
        for a, b in options:
            if (a, b) in frozen:
                continue
            nxt = list(masks)
            nxt[a] ^= 1 << b
            found = search(nxt, frozen | {(a, b)}, flipped + ((a, b),), depth - 1)
            if found is not None:
                return found
        return None

    start = list(dg.out_masks)
    for depth in range(budget + 1):
        flipped = search(start, frozenset(), (), depth)
        if flipped is not None:
            flips = set(flipped)
            return ArcModSet(additions=frozenset(flips - dg.arcs), deletions=frozenset(flips & dg.arcs))
    return None
