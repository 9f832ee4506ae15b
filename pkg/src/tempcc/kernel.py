"""Kernelization of Open-TCC via compression to Clique.

The mutual graph of the reachability graph turns tccs into cliques. Given a
vertex set ``B`` (blue) such that some arc-modification set inside ``B x B``
makes the reachability graph transitive, the white vertices ``V - B`` form
clusters of real twins and three reduction rules shrink the instance to
``O(|B|^2)`` vertices:

* RR1: delete a vertex of degree < k' - 1;
* RR2: a white vertex with >= k' - 1 white neighbours means yes;
* RR3: while k' > |B| + 1, delete one white vertex per cluster and lower k'.
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .core import Setting, TemporalGraph
from .errors import KTooSmall, NotInherentModulator, ParseError
from .generators import semaphore_edges
from .graphs import DiGraph, Graph, bits, parse_dimacs, popcount, to_mask, write_dimacs
from .opentcc import mutual_graph
from .reachability import reachability_graph
from .transitivity import arc_addition_set, find_violation

BLUE = "blue"
WHITE = "white"

REDUCED = "reduced"
TRIVIAL_YES = "trivial-yes"
TRIVIAL_NO = "trivial-no"

__all__ = [
    "CliqueInstance",
    "KernelTrace",
    "RuleApplication",
    "mutual_graph",
    "kernelize",
    "kernelize_digraph",
    "kernelize_addition",
    "compress_addition_only",
    "clique_to_open_tcc",
    "replay_trace",
    "parse_clique_instance",
]


@dataclass(frozen=True)
class CliqueInstance:
    graph: Graph
    k: int
    coloring: Tuple[str, ...]
    clusters: Tuple[Tuple[int, ...], ...]
    origin_map: Tuple[Optional[int], ...]

    @property
    def blue(self) -> List[int]:
        return [v for v, c in enumerate(self.coloring) if c == BLUE]

    @property
    def white(self) -> List[int]:
        return [v for v, c in enumerate(self.coloring) if c == WHITE]

    def to_dimacs(self) -> str:
        comments = [f"k {self.k}", "blue " + " ".join(str(v + 1) for v in self.blue)]
        comments.extend("cluster " + " ".join(str(v + 1) for v in c) for c in self.clusters)
        comments.append("origin " + " ".join("-" if o is None else str(o) for o in self.origin_map))
        return write_dimacs(self.graph, [c.rstrip() for c in comments])


def parse_clique_instance(text: str) -> CliqueInstance:
    graph, comments = parse_dimacs(text)
    k = None
    blue: List[int] = []
    clusters = []
    origin: List[Optional[int]] = [None] * graph.n
    for c in comments:
        key, _, rest = c.partition(" ")
        vals = rest.split()
        if key == "k":
            k = int(vals[0])
        elif key == "blue":
            blue = [int(x) - 1 for x in vals]
        elif key == "cluster":
            clusters.append(tuple(int(x) - 1 for x in vals))
        elif key == "origin":
            origin = [None if x == "-" else int(x) for x in vals]
    if k is None:
        raise ParseError("missing 'c k' comment")
    coloring = tuple(BLUE if v in set(blue) else WHITE for v in range(graph.n))
    return CliqueInstance(graph, k, coloring, tuple(clusters), tuple(origin))


@dataclass(frozen=True)
class RuleApplication:
    rule: str
    vertices: Tuple[int, ...]
    k_after: int


@dataclass
class KernelTrace:
    """Rule log in application order. Vertex ids refer to the mutual graph."""

    steps: List[RuleApplication] = field(default_factory=list)
    status: str = REDUCED
    blue: Tuple[int, ...] = ()
    k: int = 0

    def log(self, rule: str, vertices: Iterable[int], k_after: int) -> None:
        self.steps.append(RuleApplication(rule, tuple(vertices), k_after))

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "k": self.k,
            "blue": list(self.blue),
            "steps": [{"rule": s.rule, "vertices": list(s.vertices), "k_after": s.k_after} for s in self.steps],
        }


def _trivial(yes: bool) -> CliqueInstance:
    # the empty graph fits every size bound, even for |B| = 0;
    # it holds a clique of size 0 but none of size 1
    return CliqueInstance(Graph(0), 0 if yes else 1, (), (), ())


def _check_claims(hat: Graph, blue: FrozenSet[int], alive: int) -> None:
    """Raise unless the white vertices of ``hat[alive]`` behave as the kernel needs."""
    adj = hat.adj_masks
    white_mask = alive & ~to_mask(blue)
    for u in bits(white_mask):
        for v in bits(adj[u] & white_mask):
            if v <= u:
                continue
            diff = ((adj[u] | 1 << u) ^ (adj[v] | 1 << v)) & alive
            if diff:
                w = (diff & -diff).bit_length() - 1
                raise NotInherentModulator("adjacent white vertices are real twins", (u, v, w))
    cluster_of: Dict[int, int] = {}
    for cid, comp in enumerate(hat.components(bits(white_mask))):
        for v in comp:
            cluster_of[v] = cid
    for b in sorted(blue):
        if not alive >> b & 1:
            continue
        seen: Dict[int, int] = {}
        for w in bits(adj[b] & white_mask):
            seen.setdefault(cluster_of[w], w)
        if len(seen) > 1:
            first, second = list(seen.values())[:2]
            raise NotInherentModulator("blue vertex has neighbours in at most one white cluster", (b, first, second))


def _build_instance(hat: Graph, blue: FrozenSet[int], alive: int, kp: int) -> CliqueInstance:
    kept = list(bits(alive))
    sub = hat.induced(kept)
    index = {v: i for i, v in enumerate(kept)}
    whites = [v for v in kept if v not in blue]
    clusters = tuple(tuple(index[v] for v in comp) for comp in hat.components(whites))
    coloring = tuple(BLUE if v in blue else WHITE for v in kept)
    return CliqueInstance(sub, kp, coloring, clusters, tuple(kept))


class _Reducer:
    def __init__(self, hat: Graph, blue: FrozenSet[int], k: int, trace: KernelTrace):
        self.hat = hat
        self.blue_mask = to_mask(blue)
        self.nblue = len(blue)
        self.alive = to_mask(range(hat.n))
        self.k = k
        self.trace = trace

    def rr1(self) -> None:
        adj = self.hat.adj_masks
        while True:
            low = [v for v in bits(self.alive) if popcount(adj[v] & self.alive) < self.k - 1]
            if not low:
                return
            v = low[0]
            self.alive &= ~(1 << v)
            self.trace.log("RR1", (v,), self.k)

    def rr2(self) -> Optional[int]:
        adj = self.hat.adj_masks
        white = self.alive & ~self.blue_mask
        for v in bits(white):
            if popcount(adj[v] & white) >= self.k - 1:
                return v
        return None

    def rr3(self) -> None:
        white = self.alive & ~self.blue_mask
        removed = [max(c) for c in self.hat.components(bits(white))]
        self.alive &= ~to_mask(removed)
        self.k -= 1
        self.trace.log("RR3", removed, self.k)

    def run(self) -> str:
        while True:
            self.rr1()
            v = self.rr2()
            if v is not None:
                self.trace.log("RR2", (v,), self.k)
                return TRIVIAL_YES
            if popcount(self.alive) < self.k:
                return TRIVIAL_NO
            if self.k <= self.nblue + 1:
                return REDUCED
            self.rr3()


def kernelize_digraph(dg: DiGraph, k: int, B: Iterable[int]) -> Tuple[CliqueInstance, KernelTrace]:
    if k < 1:
        raise ValueError("k must be positive")
    blue = frozenset(B)
    if any(not 0 <= b < dg.n for b in blue):
        raise ValueError("modulator vertex out of range")
    white = [v for v in range(dg.n) if v not in blue]
    triple = find_violation(dg, white)
    if triple is not None:
        raise NotInherentModulator("graph minus the set is transitive", triple)
    hat = mutual_graph(dg)
    _check_claims(hat, blue, to_mask(range(dg.n)))

    trace = KernelTrace(blue=tuple(sorted(blue)), k=k)
    red = _Reducer(hat, blue, k, trace)
    trace.status = red.run()
    if trace.status != REDUCED:
        return _trivial(trace.status == TRIVIAL_YES), trace
    # induced subgraphs keep the claims; re-check rather than assume
    _check_claims(hat, blue, red.alive)
    return _build_instance(hat, blue, red.alive, red.k), trace


def kernelize(tg: TemporalGraph, s: Setting, k: int, B: Iterable[int]) -> Tuple[CliqueInstance, KernelTrace]:
    """Compress ``(tg, k)`` to an equivalent Clique instance of O(|B|^2) vertices."""
    return kernelize_digraph(reachability_graph(tg, s), k, B)


def replay_trace(dg: DiGraph, trace: KernelTrace) -> CliqueInstance:
    """Rebuild the kernel output from the mutual graph and the rule log."""
    if trace.status != REDUCED:
        return _trivial(trace.status == TRIVIAL_YES)
    hat = mutual_graph(dg)
    alive = to_mask(range(dg.n))
    kp = trace.k
    for step in trace.steps:
        if step.rule in ("RR1", "RR3"):
            alive &= ~to_mask(step.vertices)
            kp = step.k_after
    return _build_instance(hat, frozenset(trace.blue), alive, kp)


def compress_addition_only(inst: CliqueInstance) -> CliqueInstance:
    """Replace the white vertices of a reduced kernel by one shared clique W*.

    Valid when the blue set comes from an addition-only modification set:
    then every white vertex is adjacent to its whole component. Component
    ``C_i`` with ``a_i`` white vertices has its blue vertices joined to the
    first ``a_i`` vertices of W*, and ``|W*| = max a_i``.
    """
    g = inst.graph
    blue = inst.blue
    for u in inst.white:
        comp_mask = next(to_mask(c) for c in g.components() if u in c)
        missing = comp_mask & ~g.adj_masks[u] & ~(1 << u)
        if missing:
            w = (missing & -missing).bit_length() - 1
            raise NotInherentModulator("white vertices are universal in their component", (u, w))
    comps = g.components()
    alphas = [sum(1 for v in c if inst.coloring[v] == WHITE) for c in comps]
    wstar = max(alphas, default=0)
    nb = len(blue)
    index = {v: i for i, v in enumerate(blue)}
    edges = {(index[u], index[v]) for u, v in g.edges if u in index and v in index}
    edges |= {(nb + i, nb + j) for i in range(wstar) for j in range(i + 1, wstar)}
    for comp, alpha in zip(comps, alphas):
        for b in comp:
            if b in index:
                edges |= {(index[b], nb + i) for i in range(alpha)}
    coloring = (BLUE,) * nb + (WHITE,) * wstar
    origin = tuple(inst.origin_map[b] for b in blue) + (None,) * wstar
    return CliqueInstance(Graph(nb + wstar, frozenset(edges)), inst.k, coloring, (), origin)


def kernelize_addition(tg: TemporalGraph, s: Setting, k: int) -> Tuple[CliqueInstance, KernelTrace]:
    """Kernel of O(|B|) vertices where B are the endpoints of the minimum arc-addition set."""
    dg = reachability_graph(tg, s)
    B = arc_addition_set(dg).endpoints
    try:
        inst, trace = kernelize_digraph(dg, k, B)
    except NotInherentModulator as exc:
        raise AssertionError(f"endpoints of an addition-only set must be inherent: {exc}") from exc
    if trace.status != REDUCED:
        return inst, trace
    out = compress_addition_only(inst)
    trace.log("WSTAR", [v for v, o in enumerate(out.origin_map) if o is None], out.k)
    return out, trace


def clique_to_open_tcc(G: Graph, k: int) -> Tuple[TemporalGraph, int]:
    """Encode Clique as directed Open-TCC with one relay pair per edge.

    Arcs ``u -> e_uv`` and ``v -> e_vu`` at time 4, ``e_uv -> v`` and
    ``e_vu -> u`` at time 5; snapshots 1 to 3 are empty. Relay ids follow the
    sorted edge list: edge ``i`` gets ``n + 2i`` (e_uv) and ``n + 2i + 1``.
    """
    if k < 5:
        raise KTooSmall(f"k={k} < 5")
    edges = G.sorted_edges()
    arcs = semaphore_edges(edges, G.n)
    return TemporalGraph(G.n + 2 * len(edges), True, 5, tuple(arcs)), k
