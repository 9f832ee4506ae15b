"""Command-line interface.

Exit codes: 0 computed (a "no" answer included), 2 usage error,
3 precondition or verification failure.
"""

import argparse
import json
import sys
from contextlib import redirect_stderr
from typing import Any, Dict, List, Optional, Sequence

from . import closedtcc, generators, kernel, opentcc
from .core import Setting, parse_temporal_graph, serialize_temporal_graph, underlying_graph
from .errors import InstanceTooLarge, TccError
from .graphs import Graph, parse_dimacs
from .reachability import reachability_graph
from .transitivity import arc_addition_set, min_arc_modification_set, min_transitivity_modulator

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FAILED = 3


class UsageError(Exception):
    pass


def vertex_cover_number(graph: Graph, budget: int) -> Optional[int]:
    """Minimum vertex cover size by two-way edge branching, or None if above ``budget``."""
    edges = graph.sorted_edges()

    def search(covered: frozenset, left: int) -> bool:
        for u, v in edges:
            if u not in covered and v not in covered:
                if left == 0:
                    return False
                return search(covered | {u}, left - 1) or search(covered | {v}, left - 1)
        return True

    for size in range(budget + 1):
        if search(frozenset(), size):
            return size
    return None


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _vertex_list(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    if not text.strip():
        return []
    try:
        return sorted({int(x) for x in text.split(",")})
    except ValueError:
        raise UsageError(f"bad vertex list {text!r}") from None


def _load(args) -> tuple:
    tg = parse_temporal_graph(_read(args.file))
    return tg, Setting(args.strict, tg.directed)


def _yes_no(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_reach(args) -> Dict[str, Any]:
    tg, s = _load(args)
    dg = reachability_graph(tg, s)
    return {
        "result": {"n": dg.n, "arcs": [list(a) for a in dg.sorted_arcs()]},
        "witness": None,
        "trace": None,
        "text": dg.to_text(),
    }


def cmd_params(args) -> Dict[str, Any]:
    tg, s = _load(args)
    dg = reachability_graph(tg, s)
    mod = min_transitivity_modulator(dg)
    aa = arc_addition_set(dg)
    am = min_arc_modification_set(dg, args.am_budget)
    result: Dict[str, Any] = {
        "delta_vd": mod.size,
        "delta_aa": aa.size,
        "delta_am": am.size if am is not None else f"unknown (> {args.am_budget})",
        "am_budget": args.am_budget,
    }
    witness: Dict[str, Any] = {
        "modulator": mod.sorted(),
        "additions": [list(a) for a in sorted(aa.additions)],
    }
    if am is not None:
        witness["modification"] = {
            "additions": [list(a) for a in sorted(am.additions)],
            "deletions": [list(a) for a in sorted(am.deletions)],
        }
    if args.with_vc:
        under = underlying_graph(tg)
        if tg.directed:
            under = Graph(tg.n, frozenset((min(a), max(a)) for a in under.arcs))
        vc = vertex_cover_number(under, args.vc_budget)
        result["vc"] = vc if vc is not None else f"unknown (> {args.vc_budget})"
    lines = [f"{key} {result[key]}" for key in ("delta_vd", "delta_aa", "delta_am")]
    if "vc" in result:
        lines.append(f"vc {result['vc']}")
    lines.append("modulator " + ",".join(map(str, mod.sorted())))
    return {"result": result, "witness": witness, "trace": None, "text": "\n".join(lines) + "\n"}


def _tcc_payload(res: opentcc.TccResult, extra: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    text = f"size {res.size}\nanswer {_yes_no(res.answer)}\nwitness {','.join(map(str, res.witness))}\n"
    return {
        "result": {"size": res.size, "answer": res.answer},
        "witness": list(res.witness),
        "trace": extra,
        "text": text,
    }


def cmd_tcc_open(args) -> Dict[str, Any]:
    tg, s = _load(args)
    mod = _vertex_list(args.modulator)
    if mod is None:
        return _tcc_payload(opentcc.solve(tg, s, args.k))
    dg = reachability_graph(tg, s)
    if any(not 0 <= v < tg.n for v in mod):
        raise UsageError("modulator vertex out of range")
    return _tcc_payload(opentcc.solve_with_modulator(dg, args.k, mod), {"modulator": mod})


def cmd_tcc_closed(args) -> Dict[str, Any]:
    tg, s = _load(args)
    return _tcc_payload(closedtcc.solve_closed_bruteforce(tg, s, args.k, cap=args.cap))


def cmd_kernel(args) -> Dict[str, Any]:
    tg, s = _load(args)
    mod = _vertex_list(args.modulator)
    dg = reachability_graph(tg, s)
    if args.addition_only:
        if mod is not None:
            raise UsageError("--addition-only computes its own modulator")
        blue = sorted(arc_addition_set(dg).endpoints)
        inst, trace = kernel.kernelize_addition(tg, s, args.k)
    else:
        blue = mod if mod is not None else sorted(arc_addition_set(dg).endpoints)
        inst, trace = kernel.kernelize(tg, s, args.k, blue)
    nb = len(blue)
    bound = 2 * nb + 1 if args.addition_only else nb * nb + 2 * nb
    info = trace.as_dict()
    info.update({"B_size": nb, "vertices": inst.graph.n, "vertex_bound": bound})
    result: Dict[str, Any] = {
        "k": inst.k,
        "n": inst.graph.n,
        "m": len(inst.graph.edges),
        "status": trace.status,
        "dimacs": inst.to_dimacs(),
    }
    text = inst.to_dimacs()
    if args.reencode:
        if inst.k >= 5:
            enc, k_enc = kernel.clique_to_open_tcc(inst.graph, inst.k)
            result["reencoded"] = serialize_temporal_graph(enc)
            result["reencoded_k"] = k_enc
            text = serialize_temporal_graph(enc, [f"k {k_enc}"])
        else:
            result["reencoded"] = None
            text += f"c reencode skipped: k' = {inst.k} < 5\n"
    return {"result": result, "witness": blue, "trace": info, "text": text}


def cmd_oracle(args) -> Dict[str, Any]:
    tg, s = _load(args)
    dg = reachability_graph(tg, s)
    op = opentcc.max_bidirectional_clique_bruteforce(dg, cap=args.cap)
    result: Dict[str, Any] = {"open_max": op.size}
    witness: Dict[str, Any] = {"open": list(op.witness)}
    try:
        cl = closedtcc.solve_closed_bruteforce(tg, s, 1, cap=args.closed_cap)
        result["closed_max"] = cl.size
        witness["closed"] = list(cl.witness)
    except InstanceTooLarge:
        result["closed_max"] = None
    text = f"open_max {result['open_max']}\nclosed_max {result['closed_max']}\n"
    return {"result": result, "witness": witness, "trace": None, "text": text}


def cmd_gen(args) -> Dict[str, Any]:
    comments: List[str] = []
    meta: Dict[str, Any] = {}
    kind = args.kind
    if kind == "single-snapshot":
        tg = generators.gen_single_snapshot(parse_dimacs(_read(args.graph))[0])
    elif kind == "star":
        tg = generators.gen_star(args.m)
    elif kind == "nokernel":
        G = parse_dimacs(_read(args.graph))[0]
        inst = generators.gen_nokernel_directed(G, _vertex_list(args.cover) or [], args.k)
        tg = inst.tg
        meta = {"k": inst.k, "partite": inst.partite, "in_vertex": {str(v): i for v, i in inst.in_vertex.items()}}
        comments = [f"k {inst.k}", f"(k-1)-partite cover: {_yes_no(inst.partite)}"]
    elif kind == "closed-hard":
        src = parse_temporal_graph(_read(args.file))
        tg = generators.gen_closed_hard(src, args.k)
        lay = generators.closed_hard_layout(src.n)
        meta = {"k": args.k, "x1": lay.x1, "x2": lay.x2, "x3": lay.x3, "arc_pairs": src.directed}
        comments = [f"k {args.k}", f"x1 {lay.x1} x2 {lay.x2} x3 {lay.x3}"]
        if src.directed:
            comments.append("directed input: each gadget edge added as two opposite arcs")
    elif kind == "random":
        tg = generators.gen_random(args.n, args.lifetime, args.p, args.directed, args.seed)
    else:
        raise UsageError(f"unknown generator {kind}")
    text = serialize_temporal_graph(tg, comments)
    return {
        "result": {"tg": serialize_temporal_graph(tg), "n": tg.n, "lifetime": tg.lifetime, "m": len(tg.edges), **meta},
        "witness": None,
        "trace": None,
        "text": text,
    }


def _add_setting(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--strict", dest="strict", action="store_true")
    g.add_argument("--non-strict", dest="strict", action="store_false")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON object")

    parser = argparse.ArgumentParser(prog="tempcc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reach", parents=[common], help="reachability graph")
    p.add_argument("file")
    _add_setting(p)
    p.set_defaults(func=cmd_reach)

    p = sub.add_parser("params", parents=[common], help="distance-to-transitivity parameters")
    p.add_argument("file")
    _add_setting(p)
    p.add_argument("--am-budget", type=int, default=12)
    p.add_argument("--with-vc", action="store_true")
    p.add_argument("--vc-budget", type=int, default=30)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("tcc-open", parents=[common], help="maximum open tcc")
    p.add_argument("file")
    p.add_argument("-k", type=int, required=True)
    _add_setting(p)
    p.add_argument("--modulator")
    p.set_defaults(func=cmd_tcc_open)

    p = sub.add_parser("tcc-closed-bf", parents=[common], help="maximum closed tcc by brute force")
    p.add_argument("file")
    p.add_argument("-k", type=int, required=True)
    _add_setting(p)
    p.add_argument("--cap", type=int, default=15)
    p.set_defaults(func=cmd_tcc_closed)

    p = sub.add_parser("kernel", parents=[common], help="kernelize to Clique (DIMACS)")
    p.add_argument("file")
    p.add_argument("-k", type=int, required=True)
    _add_setting(p)
    p.add_argument("--addition-only", action="store_true")
    p.add_argument("--modulator")
    p.add_argument("--reencode", action="store_true")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("oracle", parents=[common], help="brute-force tcc sizes")
    p.add_argument("file")
    _add_setting(p)
    p.add_argument("--cap", type=int, default=20)
    p.add_argument("--closed-cap", type=int, default=15)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate instances (.tg)")
    gsub = p.add_subparsers(dest="kind", required=True)
    g = gsub.add_parser("single-snapshot", parents=[common])
    g.add_argument("graph", help="DIMACS graph")
    g = gsub.add_parser("star", parents=[common])
    g.add_argument("m", type=int)
    g = gsub.add_parser("nokernel", parents=[common])
    g.add_argument("graph", help="DIMACS graph")
    g.add_argument("--cover", required=True)
    g.add_argument("-k", type=int, required=True)
    g = gsub.add_parser("closed-hard", parents=[common])
    g.add_argument("file")
    g.add_argument("-k", type=int, required=True)
    g = gsub.add_parser("random", parents=[common])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--lifetime", "-L", type=int, required=True)
    g.add_argument("--p", type=float, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--directed", action="store_true")
    p.set_defaults(func=cmd_gen)
    return parser


def _input_of(args) -> Dict[str, Any]:
    skip = {"func", "json", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(out, obj: Dict[str, Any]) -> None:
    out.write(json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n")


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    command = args.command if args.command != "gen" else f"gen {args.kind}"
    try:
        payload = args.func(args)
    except UsageError as exc:
        err.write(f"tempcc: {exc}\n")
        return EXIT_USAGE
    except (TccError, ValueError) as exc:
        if args.json:
            _emit(out, {
                "command": command,
                "input": _input_of(args),
                "error": {"type": type(exc).__name__, "message": str(exc), **_error_fields(exc)},
            })
        else:
            err.write(f"tempcc: {type(exc).__name__}: {exc}\n")
        return EXIT_FAILED
    if args.json:
        _emit(out, {
            "command": command,
            "input": _input_of(args),
            "result": payload["result"],
            "witness": payload["witness"],
            "trace": payload["trace"],
        })
    else:
        out.write(payload["text"])
    return EXIT_OK


def _error_fields(exc: Exception) -> Dict[str, Any]:
    fields = {}
    for name in ("line", "triple", "claim", "witness", "edge"):
        if hasattr(exc, name):
            val = getattr(exc, name)
            fields[name] = list(val) if isinstance(val, tuple) else val
    return fields


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
