"""Temporal graph data model, settings, structural predicates and ``.tg`` I/O."""

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Tuple, Union

from .errors import ParseError
from .graphs import DiGraph, Graph

TimeEdge = Tuple[int, int, int]


@dataclass(frozen=True)
class Setting:
    """Path semantics: strict (increasing labels) or non-strict, and orientation."""

    strict: bool
    directed: bool

    @property
    def name(self) -> str:
        return f"{'strict' if self.strict else 'non-strict'} {'directed' if self.directed else 'undirected'}"


ALL_SETTINGS = tuple(Setting(s, d) for d in (False, True) for s in (True, False))


@dataclass(frozen=True)
class TemporalGraph:
    """A temporal graph on vertices 0..n-1 with lifetime ``lifetime``.

    ``edges`` holds ``(u, v, t)`` triples with ``1 <= t <= lifetime``.
    Undirected edges are canonicalised to ``u < v``. Edges are kept sorted
    by ``(t, u, v)``; empty snapshots need no storage.
    """

    n: int
    directed: bool
    lifetime: int
    edges: Tuple[TimeEdge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.lifetime < 1:
            raise ValueError("lifetime must be positive")
        seen = set()
        for u, v, t in self.edges:
            _check_edge(self.n, self.lifetime, u, v, t)
            key = (u, v, t) if self.directed else (min(u, v), max(u, v), t)
            if key in seen:
                raise ValueError(f"duplicate time-edge {key}")
            seen.add(key)
        object.__setattr__(self, "edges", tuple(sorted(seen, key=lambda e: (e[2], e[0], e[1]))))

    @cached_property
    def snapshots(self) -> Dict[int, List[Tuple[int, int]]]:
        """Nonempty snapshots keyed by timestep."""
        snaps: Dict[int, List[Tuple[int, int]]] = defaultdict(list)
        for u, v, t in self.edges:
            snaps[t].append((u, v))
        return dict(snaps)

    def snapshot(self, t: int) -> List[Tuple[int, int]]:
        return list(self.snapshots.get(t, ()))

    def induce(self, vertices: Iterable[int]) -> "TemporalGraph":
        """Keep only time-edges inside ``vertices``. Ids, labels and lifetime are unchanged."""
        keep = set(vertices)
        return TemporalGraph(
            self.n,
            self.directed,
            self.lifetime,
            tuple(e for e in self.edges if e[0] in keep and e[1] in keep),
        )

    def to_text(self) -> str:
        return serialize_temporal_graph(self)


def _check_edge(n, lifetime, u, v, t):
    if u == v:
        raise ValueError(f"self-loop at vertex {u}")
    if not (0 <= u < n and 0 <= v < n):
        raise ValueError(f"vertex id out of range in ({u}, {v}) for n={n}")
    if not 1 <= t <= lifetime:
        raise ValueError(f"timestep {t} outside [1, {lifetime}]")


def parse_temporal_graph(text: Union[str, bytes]) -> TemporalGraph:
    """Parse the ``.tg`` text format; errors carry the offending line number."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.split("\n"), 1):
        ln = raw.strip()
        if not ln or ln.startswith("#"):
            continue
        parts = ln.split()
        if header is None:
            if (
                len(parts) != 4
                or parts[0] != "tg"
                or parts[1] not in ("directed", "undirected")
                or not parts[2].isdigit()
                or not parts[3].isdigit()
            ):
                raise ParseError(f"malformed header {ln!r}", lineno)
            header = (parts[1] == "directed", int(parts[2]), int(parts[3]))
            if header[2] < 1:
                raise ParseError("lifetime must be positive", lineno)
            continue
        directed, n, lifetime = header
        if len(parts) != 3 or not all(p.isdigit() for p in parts):
            raise ParseError(f"malformed edge line {ln!r}", lineno)
        u, v, t = (int(p) for p in parts)
        try:
            _check_edge(n, lifetime, u, v, t)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        key = (u, v, t) if directed else (min(u, v), max(u, v), t)
        if key in seen:
            raise ParseError(f"duplicate time-edge {key}", lineno)
        seen.add(key)
        edges.append(key)
    if header is None:
        raise ParseError("missing header")
    directed, n, lifetime = header
    return TemporalGraph(n, directed, lifetime, tuple(edges))


def serialize_temporal_graph(tg: TemporalGraph, comments: Iterable[str] = ()) -> str:
    kind = "directed" if tg.directed else "undirected"
    lines = [f"# {c}" for c in comments]
    lines.append(f"tg {kind} {tg.n} {tg.lifetime}")
    lines.extend(f"{u} {v} {t}" for u, v, t in tg.edges)
    return "\n".join(lines) + "\n"


def is_proper(tg: TemporalGraph) -> bool:
    """Undirected: every vertex has degree at most one per snapshot.
    Directed: no vertex has both an in-arc and an out-arc in one snapshot."""
    for pairs in tg.snapshots.values():
        if tg.directed:
            heads, tails = set(), set()
            for u, v in pairs:
                tails.add(u)
                heads.add(v)
            if heads & tails:
                return False
        else:
            touched = set()
            for u, v in pairs:
                if u in touched or v in touched:
                    return False
                touched.add(u)
                touched.add(v)
    return True


def is_simple(tg: TemporalGraph) -> bool:
    pairs = [(u, v) for u, v, _ in tg.edges]
    return len(pairs) == len(set(pairs))


def underlying_graph(tg: TemporalGraph) -> Union[Graph, DiGraph]:
    pairs: FrozenSet[Tuple[int, int]] = frozenset((u, v) for u, v, _ in tg.edges)
    if tg.directed:
        return DiGraph(tg.n, pairs)
    return Graph(tg.n, pairs)
