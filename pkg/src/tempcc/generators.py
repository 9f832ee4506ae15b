"""Gadget constructions and random temporal graphs.

Vertex numbering is fixed so tests can address gadget vertices by formula:

* ``gen_star(m)``: X = 0..m-1, Y = m..2m-1, centre 2m.
* semaphore relays: the i-th edge ``{u, v}`` (``u < v``, sorted) gets
  ``e_uv = base + 2i`` and ``e_vu = base + 2i + 1``.
* ``gen_nokernel_directed``: V(G), then relays for the edges of G[S], then
  ``in_v`` for each v in S in increasing order.
* ``gen_closed_hard``: original 0..n-1, ``v' = n + v``, then x1, x2, x3 =
  2n, 2n+1, 2n+2.
"""

import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Sequence, Tuple

from .core import TemporalGraph, is_proper
from .errors import KTooSmall, NotAVertexCover, NotProper
from .graphs import Graph


def semaphore_edges(edges: Sequence[Tuple[int, int]], base: int) -> List[Tuple[int, int, int]]:
    """Relay arcs for undirected ``edges``: u->e_uv, v->e_vu at 4; e_uv->v, e_vu->u at 5."""
    arcs = []
    for i, (u, v) in enumerate(edges):
        e_uv, e_vu = base + 2 * i, base + 2 * i + 1
        arcs += [(u, e_uv, 4), (v, e_vu, 4), (e_uv, v, 5), (e_vu, u, 5)]
    return arcs


def gen_single_snapshot(G: Graph) -> TemporalGraph:
    return TemporalGraph(G.n, False, 1, tuple((u, v, 1) for u, v in G.sorted_edges()))


def gen_star(m: int) -> TemporalGraph:
    """Star whose X-leaves are live at times 1 and 3 and Y-leaves at time 2."""
    if m < 1:
        raise ValueError("m must be positive")
    c = 2 * m
    edges = [(x, c, t) for x in range(m) for t in (1, 3)]
    edges += [(y, c, 2) for y in range(m, 2 * m)]
    return TemporalGraph(2 * m + 1, False, 3, tuple(edges))


def _colorable(G: Graph, vertices: Sequence[int], colors: int) -> bool:
    """Exact check that ``G[vertices]`` admits a proper ``colors``-colouring."""
    order = sorted(vertices, key=lambda v: -G.degree(v))
    assign: Dict[int, int] = {}

    def place(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        used = {assign[w] for w in G.neighbors(v) if w in assign}
        # symmetry: never open more than one fresh colour
        limit = min(colors, max(assign.values(), default=-1) + 2)
        for c in range(limit):
            if c not in used:
                assign[v] = c
                if place(i + 1):
                    return True
                del assign[v]
        return False

    return place(0)


@dataclass(frozen=True)
class NoKernelInstance:
    tg: TemporalGraph
    k: int
    cover: Tuple[int, ...]
    relays: Tuple[int, ...]
    in_vertex: Dict[int, int]
    partite: bool

    @property
    def outside(self) -> Tuple[int, ...]:
        """V - S: the original vertices not in the cover."""
        return tuple(v for v in range(self.n_original) if v not in set(self.cover))

    @property
    def n_original(self) -> int:
        return self.tg.n - len(self.relays) - len(self.in_vertex)


def gen_nokernel_directed(G: Graph, S: Iterable[int], k: int) -> NoKernelInstance:
    """Clique with a vertex cover ``S`` to directed Open-TCC with lifetime 5.

    Semaphore relays over G[S] at times 4 and 5, plus for every v in S an
    in-vertex with ``(in_v, v)`` at 3, and for every neighbour w of v outside
    S the arcs ``(v, w)`` at 2 and ``(w, in_v)`` at 1. ``partite`` records
    whether G[S] is (k-1)-colourable, which the clique equivalence needs.
    """
    cover = tuple(sorted(set(S)))
    inside = set(cover)
    if k <= 6:
        raise KTooSmall(f"k={k} must exceed 6")
    for u, v in G.sorted_edges():
        if u not in inside and v not in inside:
            raise NotAVertexCover((u, v))
    n = G.n
    inner = [(u, v) for u, v in G.sorted_edges() if u in inside and v in inside]
    arcs = semaphore_edges(inner, n)
    relays = tuple(range(n, n + 2 * len(inner)))
    base = n + 2 * len(inner)
    in_vertex = {v: base + i for i, v in enumerate(cover)}
    for v in cover:
        arcs.append((in_vertex[v], v, 3))
        for w in G.neighbors(v):
            if w not in inside:
                arcs.append((v, w, 2))
                arcs.append((w, in_vertex[v], 1))
    tg = TemporalGraph(base + len(cover), True, 5, tuple(arcs))
    if not is_proper(tg):
        raise NotProper("no-kernel construction produced a non-proper temporal graph")
    return NoKernelInstance(tg, k, cover, relays, in_vertex, _colorable(G, cover, k - 1))


class ClosedHardLayout(NamedTuple):
    n: int
    x1: int
    x2: int
    x3: int

    def prime(self, v: int) -> int:
        return self.n + v


def closed_hard_layout(n: int) -> ClosedHardLayout:
    return ClosedHardLayout(n, 2 * n, 2 * n + 1, 2 * n + 2)


def gen_closed_hard(tg: TemporalGraph, k: int) -> TemporalGraph:
    """Self-reduction for Closed-TCC leaving the reachability graph one arc
    short of a complete bidirectional clique (the arc x3 -> x1).

    Time labels use the 1-based value p = v + 1 of each original vertex v.
    On directed inputs every gadget edge is added as two opposite arcs.
    """
    if k <= 4:
        raise KTooSmall(f"k={k} must exceed 4")
    n, L = tg.n, tg.lifetime
    lay = closed_hard_layout(n)
    gadget = []
    for v in range(n):
        p = v + 1
        vp = lay.prime(v)
        gadget += [(v, vp, L + 1), (v, vp, L + 2 * n + 4), (vp, lay.x1, L + 1 + p), (vp, lay.x3, L + n + 3 + p)]
    gadget += [(lay.x1, lay.x2, L + n + 2), (lay.x2, lay.x3, L + n + 3)]
    if tg.directed:
        gadget += [(b, a, t) for a, b, t in gadget]
    return TemporalGraph(2 * n + 3, tg.directed, L + 2 * n + 4, tg.edges + tuple(gadget))


def gen_random(n: int, L: int, p: float, directed: bool, seed: int) -> TemporalGraph:
    """Each (pair, timestep) slot is included independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be in [0, 1]")
    rng = random.Random(seed)
    if directed:
        pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    else:
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = tuple((u, v, t) for t in range(1, L + 1) for u, v in pairs if rng.random() < p)
    return TemporalGraph(n, directed, L, edges)


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p))
