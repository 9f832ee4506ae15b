"""Brute-force Closed-TCC: witnessing paths must stay inside the component."""

from itertools import combinations

from .core import Setting, TemporalGraph
from .errors import InstanceTooLarge
from .opentcc import TccResult
from .reachability import _check_setting, _sweep, _timestep_adjacency, reachability_graph, is_bidirectional_clique


def is_closed_tcc(tg: TemporalGraph, s: Setting, C) -> bool:
    """True iff every member of ``C`` reaches every other member using only ``C``."""
    members = sorted(set(C))
    steps = _timestep_adjacency(tg.induce(members))
    need = set(members)
    for u in members:
        if not need - {u} <= _sweep(tg.n, steps, s.strict, u):
            return False
    return True


def solve_closed_bruteforce(tg: TemporalGraph, s: Setting, k: int, cap: int = 15) -> TccResult:
    """Largest closed tcc by enumeration, largest size first.

    Within a size, subsets are tried in lexicographic order, so the witness
    is the lexicographically least maximum. Every closed tcc is an open tcc,
    which is used as a cheap filter.
    """
    _check_setting(tg, s)
    if tg.n > cap:
        raise InstanceTooLarge(f"n={tg.n} exceeds cap {cap}")
    if k < 1:
        raise ValueError("k must be positive")
    dg = reachability_graph(tg, s)
    for size in range(tg.n, 0, -1):
        for C in combinations(range(tg.n), size):
            if is_bidirectional_clique(dg, C) and is_closed_tcc(tg, s, C):
                return TccResult(size, C, size >= k)
    return TccResult(0, (), False)
