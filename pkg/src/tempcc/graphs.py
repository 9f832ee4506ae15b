"""Static graphs on dense vertex ids 0..n-1.

Adjacency is kept as Python ints used as bitsets; bit ``v`` of
``out_masks[u]`` is set iff arc ``(u, v)`` is present.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import ParseError

Arc = Tuple[int, int]


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph. Edges are stored as ``(u, v)`` with ``u < v``."""

    n: int
    edges: FrozenSet[Arc] = frozenset()

    def __post_init__(self):
        canon = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {(u, v)} out of range for n={self.n}")
            canon.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(canon))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, frozenset((i, (i + 1) % n) for i in range(n)))

    @cached_property
    def adj_masks(self) -> Tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj_masks[u] >> v & 1)

    def neighbors(self, v: int) -> List[int]:
        return list(bits(self.adj_masks[v]))

    def degree(self, v: int) -> int:
        return popcount(self.adj_masks[v])

    def sorted_edges(self) -> List[Arc]:
        return sorted(self.edges)

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        mask = to_mask(vs)
        return all(mask & ~(1 << v) & ~self.adj_masks[v] == 0 for v in vs)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Subgraph induced on ``vertices``, relabelled to 0..len-1 in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        return Graph(
            len(vertices),
            frozenset(
                (index[u], index[v]) for u, v in self.edges if u in index and v in index
            ),
        )

    def components(self, vertices: Optional[Iterable[int]] = None) -> List[List[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        alive = to_mask(range(self.n)) if vertices is None else to_mask(vertices)
        out = []
        while alive:
            start = alive & -alive
            comp = start
            frontier = start
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.adj_masks[v]
                nxt &= alive & ~comp
                comp |= nxt
                frontier = nxt
            alive &= ~comp
            out.append(list(bits(comp)))
        return out


@dataclass(frozen=True)
class DiGraph:
    """Directed graph without self-loops."""

    n: int
    arcs: FrozenSet[Arc] = frozenset()

    def __post_init__(self):
        arcs = frozenset(self.arcs)
        for u, v in arcs:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc {(u, v)} out of range for n={self.n}")
        object.__setattr__(self, "arcs", arcs)

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "DiGraph":
        return cls(len(masks), frozenset((u, v) for u, m in enumerate(masks) for v in bits(m)))

    @classmethod
    def bidirectional_clique(cls, n: int) -> "DiGraph":
        return cls(n, frozenset((u, v) for u in range(n) for v in range(n) if u != v))

    @cached_property
    def out_masks(self) -> Tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[u] |= 1 << v
        return tuple(masks)

    @cached_property
    def in_masks(self) -> Tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def mutual_masks(self) -> Tuple[int, ...]:
        return tuple(o & i for o, i in zip(self.out_masks, self.in_masks))

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_masks[u] >> v & 1)

    def successors(self, u: int) -> List[int]:
        return list(bits(self.out_masks[u]))

    def delete_vertices(self, vertices: Iterable[int]) -> "DiGraph":
        """Drop every arc touching ``vertices``; vertex ids are kept."""
        gone = set(vertices)
        return DiGraph(self.n, frozenset(a for a in self.arcs if a[0] not in gone and a[1] not in gone))

    def sorted_arcs(self) -> List[Arc]:
        return sorted(self.arcs)

    def to_text(self) -> str:
        lines = [f"dg {self.n}"]
        lines.extend(f"{u} {v}" for u, v in self.sorted_arcs())
        return "\n".join(lines) + "\n"


def parse_digraph(text: str) -> DiGraph:
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), 1)]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty input")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "dg" or not parts[1].isdigit():
        raise ParseError(f"bad header {header!r}", lineno)
    n = int(parts[1])
    arcs = set()
    for lineno, ln in lines[1:]:
        try:
            u, v = (int(x) for x in ln.split())
        except ValueError:
            raise ParseError(f"bad arc line {ln!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ParseError(f"invalid arc ({u}, {v})", lineno)
        arcs.add((u, v))
    return DiGraph(n, frozenset(arcs))


def write_dimacs(graph: Graph, comments: Sequence[str] = ()) -> str:
    out = [f"c {c}" for c in comments]
    out.append(f"p edge {graph.n} {len(graph.edges)}")
    out.extend(f"e {u + 1} {v + 1}" for u, v in graph.sorted_edges())
    return "\n".join(out) + "\n"


def parse_dimacs(text: str) -> Tuple[Graph, List[str]]:
    """Parse a DIMACS ``p edge`` graph. Returns the graph and its comment lines."""
    n = None
    edges = set()
    comments = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        ln = raw.strip()
        if not ln:
            continue
        tag = ln[0]
        if tag == "c":
            comments.append(ln[1:].strip())
        elif tag == "p":
            parts = ln.split()
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParseError(f"bad problem line {ln!r}", lineno)
            n = int(parts[2])
        elif tag == "e":
            if n is None:
                raise ParseError("edge before problem line", lineno)
            parts = ln.split()
            if len(parts) != 3:
                raise ParseError(f"bad edge line {ln!r}", lineno)
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ParseError(f"invalid edge {parts[1]} {parts[2]}", lineno)
            edges.add((min(u, v), max(u, v)))
        else:
            raise ParseError(f"unknown line {ln!r}", lineno)
    if n is None:
        raise ParseError("missing problem line")
    return Graph(n, frozenset(edges)), comments


def max_clique(graph: Graph, vertices: Optional[Iterable[int]] = None) -> List[int]:
    """Maximum clique by branch and bound.

    Returns the lexicographically least maximum clique: candidates are tried
    in increasing order with include-before-exclude, and the incumbent is only
    replaced by a strictly larger clique.
    """
    adj = graph.adj_masks
    start = to_mask(range(graph.n)) if vertices is None else to_mask(vertices)
    best: List[int] = []

    def expand(chosen: List[int], cand: int) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        while cand:
            if len(chosen) + popcount(cand) <= len(best):
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            chosen.append(v)
            expand(chosen, cand & adj[v])
            chosen.pop()

    expand([], start)
    return best
