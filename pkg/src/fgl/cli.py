"""Command-line front-end tying the solver, kernels, strategies, and
reductions together.

Subcommands: family, solve, kernel, strategy, reduce, scan, replay.
Machine-readable output goes to stdout when --format is json or csv, with a
one-line human summary on stderr; --format text prints the summary only.
Exit codes: 0 success, 1 verification counterexample or failed check,
2 input error, 3 search budget exceeded.

JSON reports are wrapped in an envelope naming the tool, its version, the
subcommand, and a hash of the run configuration, so identical runs emit
identical bytes and can be traced back to their inputs.  Wall-clock fields
are zeroed unless --timings is passed, keeping canonical outputs stable.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import asdict

from . import __version__
from .engine import Variant, run_moves, winner_of_final
from .errors import (
    BudgetExceeded,
    FglError,
    InputError,
)
from .families import make_family
from .graph_io import (
    dump_graph,
    dump_kernel,
    graph_to_obj,
    kernel_to_obj,
    load_graph,
    load_kernel,
    load_transcript,
)
from .kernel import (
    build_kernel_cert,
    enumerate_even_kernels,
    find_even_kernel,
    torus_tiled_kernel,
    tri_kernel,
    validate_even_kernel,
)
from .reductions import (
    eulerize,
    pseudo_arc_transform,
    reduction_equivalence_check,
)
from .solver import SearchLimits, scan, scan_csv, solve, verify_policy
from .strategies import (
    gk_policy,
    kernel_policy,
    q2n_policy,
    q3n_policy,
    t5_policy,
)


def _config_hash(payload):
    canon = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:12]


def _emit(args, config, payload, summary):
    """Send the machine report to stdout and the summary to stderr.

    In text mode only the summary is printed (to stdout); json mode wraps
    the payload in the versioned envelope.
    """
    if args.format == "json":
        envelope = {
            "tool": "fgl",
            "version": __version__,
            "command": config["command"],
            "config_hash": _config_hash(config),
        }
        envelope.update(payload)
        print(json.dumps(envelope, indent=2))
        print(summary, file=sys.stderr)
    else:
        print(summary)


def _limits(args):
    return SearchLimits(
        max_states=args.max_states, max_seconds=args.max_seconds
    )


def _add_budget_flags(parser):
    parser.add_argument(
        "--max-states",
        type=int,
        default=50_000_000,
        help="state budget per solve (default 5e7)",
    )
    parser.add_argument(
        "--max-seconds",
        type=float,
        default=120.0,
        help="time budget per solve in seconds (default 120)",
    )


def _add_format_flags(parser, default="text", choices=("json", "text")):
    parser.add_argument(
        "--format",
        choices=choices,
        default=default,
        help=f"output format (default {default})",
    )
    parser.add_argument(
        "--timings",
        action="store_true",
        help="include wall-clock fields (off by default: canonical output)",
    )


def _undirected(g, path):
    if g.directed:
        raise InputError(f"{path} holds a digraph; this command needs an undirected graph")
    return g


def _directed(g, path):
    if not g.directed:
        raise InputError(f"{path} holds an undirected graph; this command needs a digraph")
    return g


# ----------------------------------------------------------------- family

def _cmd_family(args):
    g, s = make_family(args.name, tuple(args.params))
    label_map = {str(i): lab for i, lab in enumerate(g.vertices)}
    params = ",".join(str(p) for p in args.params)
    summary = (
        f"{args.name}({params}): {g.vertex_count} vertices, "
        f"{g.edge_count} edges, default start {s}"
    )
    if args.output:
        dump_graph(g, args.output)
        sidecar = args.labels or _sidecar_path(args.output)
        with open(sidecar, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(label_map, indent=2) + "\n")
        print(f"{summary} -> {args.output} (labels: {sidecar})", file=sys.stderr)
    else:
        print(json.dumps(graph_to_obj(g), indent=2))
        print(summary, file=sys.stderr)
    return 0


def _sidecar_path(output):
    root, ext = os.path.splitext(output)
    return f"{root}.labels{ext or '.json'}"


# ------------------------------------------------------------------ solve

def _cmd_solve(args):
    g = load_graph(args.graph)
    variant = Variant(args.variant)
    config = {
        "command": "solve",
        "graph": args.graph,
        "start": args.start,
        "variant": variant.value,
        "max_states": args.max_states,
        "max_seconds": args.max_seconds,
        "pv": args.pv,
    }
    try:
        verdict = solve(g, args.start, variant, _limits(args), pv=args.pv)
    except BudgetExceeded as exc:
        payload = {
            "result": "BUDGET_EXCEEDED",
            "reason": exc.reason,
            "states_visited": exc.states_visited,
            "table_hits": exc.table_hits,
        }
        _emit(args, config, payload, f"budget exceeded after {exc.states_visited} states")
        return 3
    payload = {
        "winner": verdict.winner.value,
        "states_visited": verdict.states_visited,
        "table_hits": verdict.table_hits,
        "principal_variation": (
            list(verdict.principal_variation)
            if verdict.principal_variation is not None
            else None
        ),
        "wall_time": round(verdict.wall_time, 3) if args.timings else 0.0,
    }
    summary = f"winner {verdict.winner.value} ({verdict.states_visited} states)"
    if verdict.principal_variation:
        summary += f"; pv {list(verdict.principal_variation)}"
    _emit(args, config, payload, summary)
    return 0


# ----------------------------------------------------------------- kernel

def _cmd_kernel(args):
    handler = {
        "find": _kernel_find,
        "check": _kernel_check,
        "enumerate": _kernel_enumerate,
        "construct": _kernel_construct,
    }[args.action]
    return handler(args)


def _kernel_find(args):
    g = _undirected(load_graph(args.graph), args.graph)
    config = {
        "command": "kernel find",
        "graph": args.graph,
        "start": args.start,
        "max_states": args.max_states,
        "max_seconds": args.max_seconds,
    }
    stats = {}
    try:
        kernel = find_even_kernel(
            g,
            args.start,
            max_nodes=args.max_states,
            max_seconds=args.max_seconds,
            stats=stats,
        )
    except BudgetExceeded as exc:
        _emit(
            args,
            config,
            {"result": "BUDGET_EXCEEDED", "nodes": stats.get("nodes", 0)},
            f"budget exceeded: {exc}",
        )
        return 3
    if kernel is None:
        _emit(
            args,
            config,
            {"result": "NONE", "nodes": stats.get("nodes", 0)},
            "no even kernel exists (search exhausted)",
        )
        return 0
    members = list(kernel.S.members())
    if args.output:
        dump_kernel(kernel, args.output)
    _emit(
        args,
        config,
        {"result": "KERNEL", "start": kernel.start, "S": members,
         "nodes": stats.get("nodes", 0)},
        f"even kernel with {len(members)} vertices: {members}",
    )
    return 0


def _kernel_check(args):
    g = _undirected(load_graph(args.graph), args.graph)
    kernel = load_kernel(args.kernel, g.vertex_count)
    config = {
        "command": "kernel check",
        "graph": args.graph,
        "kernel": args.kernel,
    }
    result = validate_even_kernel(g, kernel.start, kernel.S)
    if result.ok:
        _emit(args, config, {"result": "OK"}, "kernel is valid")
        return 0
    _emit(
        args,
        config,
        {"result": "INVALID", "violations": [asdict(v) for v in result.violations]},
        "invalid kernel: " + "; ".join(v.message for v in result.violations),
    )
    return 1


def _kernel_enumerate(args):
    g = _undirected(load_graph(args.graph), args.graph)
    config = {
        "command": "kernel enumerate",
        "graph": args.graph,
        "start": args.start,
    }
    kernels = enumerate_even_kernels(g, args.start)
    payload = {
        "count": len(kernels),
        "kernels": [list(k.S.members()) for k in kernels],
    }
    _emit(args, config, payload, f"{len(kernels)} even kernel(s)")
    return 0


def _kernel_construct(args):
    params = tuple(args.params)
    config = {
        "command": "kernel construct",
        "family": args.family,
        "params": list(params),
    }
    if args.family == "tri":
        if len(params) != 1:
            raise InputError("tri construction takes one parameter: n")
        kernel = tri_kernel(params[0])
    elif args.family == "torus":
        if len(params) != 2:
            raise InputError("torus construction takes two parameters: m n")
        kernel = torus_tiled_kernel(*params)
    else:
        raise InputError(
            f"no closed-form kernel construction for family {args.family!r}"
        )
    members = list(kernel.S.members())
    if args.output:
        dump_kernel(kernel, args.output)
    _emit(
        args,
        config,
        {"start": kernel.start, "S": members},
        f"constructed kernel with {len(members)} vertices",
    )
    return 0


# --------------------------------------------------------------- strategy

_POLICY_CHOICES = ("kernel", "q2n", "q3n", "gk", "t5")


def _resolve_policy(args):
    """Build (board, start, policy) for a strategy verify run."""
    params = tuple(args.params or ())
    name = args.policy
    if name == "kernel":
        if args.family not in ("tri", "torus"):
            raise InputError(
                "policy kernel needs --family tri or torus with --params"
            )
        g, s = make_family(args.family, params)
        if args.family == "tri":
            kernel = tri_kernel(*params)
        else:
            kernel = torus_tiled_kernel(*params)
        return g, s, kernel_policy(build_kernel_cert(g, kernel))
    if name == "q2n":
        if len(params) != 1:
            raise InputError("policy q2n takes --params n (odd)")
        g, s = make_family("torus", (2, params[0]))
        return g, s, q2n_policy(params[0])
    if name == "q3n":
        if len(params) != 1:
            raise InputError("policy q3n takes --params n (gcd(3,n)=1)")
        g, s = make_family("torus", (3, params[0]))
        return g, s, q3n_policy(params[0])
    if name == "gk":
        if len(params) != 1:
            raise InputError("policy gk takes --params k (k >= 2)")
        g, s = make_family("gk", params)
        return g, s, gk_policy(params[0])
    if params not in ((), (5,)):
        raise InputError("policy t5 plays one fixed instance; drop --params")
    g, s = make_family("tri", (5,))
    return g, s, t5_policy()


def _cmd_strategy(args):
    g, s, policy = _resolve_policy(args)
    config = {
        "command": "strategy verify",
        "policy": args.policy,
        "family": args.family,
        "params": list(args.params or ()),
        "max_states": args.max_states,
        "max_seconds": args.max_seconds,
    }
    try:
        report = verify_policy(
            g, s, Variant.FEEDBACK, policy, policy.owner, limits=_limits(args)
        )
    except BudgetExceeded as exc:
        _emit(
            args,
            config,
            {"result": "BUDGET_EXCEEDED", "states_visited": exc.states_visited},
            f"budget exceeded: {exc}",
        )
        return 3
    payload = {
        "policy": args.policy,
        "owner": policy.owner.value,
        "verified": report.verified,
        "lines_explored": report.lines_explored,
        "max_depth": report.max_depth,
    }
    if report.verified:
        _emit(
            args,
            config,
            payload,
            f"verified: {policy.owner.value} wins every line "
            f"({report.lines_explored} lines, depth {report.max_depth})",
        )
        return 0
    payload["failure"] = report.failure
    payload["detail"] = report.detail
    payload["counterexample"] = list(report.counterexample or ())
    _emit(
        args,
        config,
        payload,
        f"NOT verified ({report.failure}): {report.detail}; "
        f"counterexample {list(report.counterexample or ())}",
    )
    return 1


# ----------------------------------------------------------------- reduce

def _gadget_map_obj(gm):
    """JSON-ready dict for a GadgetMap (int keys become strings)."""
    obj = {}
    for field_name, value in asdict(gm).items():
        if isinstance(value, dict):
            obj[field_name] = {str(k): v for k, v in value.items()}
        else:
            obj[field_name] = value
    return obj


def _write_transform(args, result, gm, summary):
    if args.output:
        dump_graph(result, args.output)
        print(f"{summary} -> {args.output}", file=sys.stderr)
    else:
        print(json.dumps(graph_to_obj(result), indent=2))
        print(summary, file=sys.stderr)
    if args.map:
        with open(args.map, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(_gadget_map_obj(gm), indent=2) + "\n")
    return 0


def _cmd_reduce(args):
    if args.action == "pseudo-arcs":
        d = _directed(load_graph(args.graph), args.graph)
        result, gm = pseudo_arc_transform(d)
        return _write_transform(
            args,
            result,
            gm,
            f"pseudo-arc transform: {d.vertex_count} vertices / "
            f"{d.arc_count} arcs -> {result.vertex_count} vertices / "
            f"{result.edge_count} edges",
        )
    if args.action == "eulerize":
        g = _undirected(load_graph(args.graph), args.graph)
        result, gm = eulerize(g, args.start)
        return _write_transform(
            args,
            result,
            gm,
            f"eulerize: {g.vertex_count} vertices / {g.edge_count} edges -> "
            f"{result.vertex_count} vertices / {result.edge_count} edges",
        )
    # check
    d = _directed(load_graph(args.graph), args.graph)
    config = {
        "command": "reduce check",
        "graph": args.graph,
        "start": args.start,
        "max_states": args.max_states,
        "max_seconds": args.max_seconds,
    }
    report = reduction_equivalence_check(d, args.start, _limits(args))
    payload = {
        "digraph_winner": report.digraph_winner.value,
        "geography_winner": report.geography_winner.value,
        "feedback_winner": report.feedback_winner.value,
        "ok": report.ok,
        "warnings": list(report.warnings),
    }
    verdicts = (
        f"{report.digraph_winner.value}/{report.geography_winner.value}"
        f"/{report.feedback_winner.value}"
    )
    if report.ok:
        _emit(args, config, payload, f"winner preserved across both transforms ({verdicts})")
        return 0
    _emit(args, config, payload, f"winner NOT preserved: {verdicts}")
    return 1


# ------------------------------------------------------------------- scan

def _cmd_scan(args):
    config = {
        "command": "scan",
        "family": args.family,
        "range": args.range,
        "what": args.what,
        "max_states": args.max_states,
        "max_seconds": args.max_seconds,
    }
    rows = scan(
        args.family,
        args.range,
        args.what,
        limits=_limits(args),
        timings=args.timings,
    )
    summary = f"{len(rows)} row(s) scanned"
    if args.format == "csv":
        sys.stdout.write(scan_csv(rows))
        print(summary, file=sys.stderr)
    elif args.format == "json":
        _emit(args, config, {"rows": [asdict(r) for r in rows]}, summary)
    else:
        for r in rows:
            print(
                f"{r.family}({r.params}) start={r.start} {r.mode}: "
                f"{r.result} [{r.states} states]"
            )
        print(summary)
    return 0


# ----------------------------------------------------------------- replay

def _cmd_replay(args):
    g = load_graph(args.graph)
    moves, recorded_winner, recorded_reason, t_start, t_variant = load_transcript(
        args.transcript
    )
    start = args.start if args.start is not None else t_start
    if start is None:
        raise InputError("transcript names no start vertex; pass -s")
    if args.variant is not None:
        variant = Variant(args.variant)
    elif t_variant is not None:
        variant = t_variant
    else:
        variant = Variant.FEEDBACK
    config = {
        "command": "replay",
        "graph": args.graph,
        "transcript": args.transcript,
        "start": start,
        "variant": variant.value,
    }
    final, outcomes = run_moves(g, start, variant, moves)
    over = bool(outcomes) and outcomes[-1].over
    winner = winner_of_final(outcomes) if over else None
    reason = outcomes[-1].reason if over else None
    payload = {
        "plies": len(moves),
        "final_token": final.token,
        "over": over,
        "winner": winner.value if winner else None,
        "reason": reason.value if reason else None,
    }
    if over:
        summary = f"{len(moves)} plies: {winner.value} wins by {reason.value}"
    else:
        summary = f"{len(moves)} plies: game still running at vertex {final.token}"
    mismatch = []
    if recorded_winner is not None and recorded_winner != winner:
        mismatch.append(
            f"recorded winner {recorded_winner.value}, replay says "
            f"{winner.value if winner else 'unfinished'}"
        )
    if recorded_reason is not None and recorded_reason != reason:
        mismatch.append(
            f"recorded reason {recorded_reason.value}, replay says "
            f"{reason.value if reason else 'unfinished'}"
        )
    if mismatch:
        payload["result"] = "MISMATCH"
        payload["mismatch"] = mismatch
        _emit(args, config, payload, summary + "; MISMATCH: " + "; ".join(mismatch))
        return 1
    payload["result"] = "OK"
    _emit(args, config, payload, summary)
    return 0


# ----------------------------------------------------------------- parser

def _build_parser():
    parser = argparse.ArgumentParser(
        prog="fgl",
        description="Feedback game workbench: solve, kernels, strategies, reductions.",
    )
    parser.add_argument(
        "--version", action="version", version=f"fgl {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("family", help="generate a named graph family instance")
    p.add_argument("name", choices=("tri", "torus", "gk", "cycle"))
    p.add_argument("params", nargs="+", type=int)
    p.add_argument("-o", "--output", help="write fgl-graph-v1 JSON here")
    p.add_argument("--labels", help="sidecar label map path (default <output>.labels.json)")
    p.set_defaults(handler=_cmd_family)

    p = sub.add_parser("solve", help="exact perfect-play winner")
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("-s", "--start", type=int, default=0)
    p.add_argument(
        "--variant",
        choices=[v.value for v in Variant],
        default=Variant.FEEDBACK.value,
    )
    p.add_argument("--pv", action="store_true", help="emit a principal variation")
    _add_budget_flags(p)
    _add_format_flags(p)
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser("kernel", help="even-kernel search, checking, construction")
    p.add_argument("action", choices=("find", "check", "enumerate", "construct"))
    p.add_argument("-g", "--graph", help="fgl-graph-v1 input")
    p.add_argument("-s", "--start", type=int, default=0)
    p.add_argument("--kernel", help="kernel JSON to check")
    p.add_argument("--family", choices=("tri", "torus"), help="construct: family name")
    p.add_argument("--params", nargs="+", type=int, help="construct: family parameters")
    p.add_argument("-o", "--output", help="write the kernel JSON here")
    _add_budget_flags(p)
    _add_format_flags(p)
    p.set_defaults(handler=_kernel_dispatch)

    p = sub.add_parser("strategy", help="verify a scripted policy exhaustively")
    p.add_argument("action", choices=("verify",))
    p.add_argument("--policy", required=True, choices=_POLICY_CHOICES)
    p.add_argument("--family", choices=("tri", "torus", "gk"))
    p.add_argument("--params", nargs="*", type=int)
    _add_budget_flags(p)
    _add_format_flags(p)
    p.set_defaults(handler=_cmd_strategy)

    p = sub.add_parser("reduce", help="hardness-gadget transforms and their check")
    p.add_argument("action", choices=("pseudo-arcs", "eulerize", "check"))
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("-s", "--start", type=int, default=0)
    p.add_argument("-o", "--output", help="write the transformed graph here")
    p.add_argument("--map", help="write the gadget bookkeeping map here")
    _add_budget_flags(p)
    _add_format_flags(p)
    p.set_defaults(handler=_cmd_reduce)

    p = sub.add_parser("scan", help="winner or kernel existence across a range")
    p.add_argument("--family", required=True, choices=("tri", "torus", "gk", "cycle"))
    p.add_argument("--range", required=True, help='e.g. 1..6 or 2..5x2..5')
    p.add_argument("--what", required=True, choices=("winner", "kernel"))
    _add_budget_flags(p)
    _add_format_flags(p, default="csv", choices=("csv", "json", "text"))
    p.set_defaults(handler=_cmd_scan)

    p = sub.add_parser("replay", help="replay and validate a playout transcript")
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("-t", "--transcript", required=True)
    p.add_argument("-s", "--start", type=int, default=None)
    p.add_argument(
        "--variant", choices=[v.value for v in Variant], default=None
    )
    _add_format_flags(p)
    p.set_defaults(handler=_cmd_replay)

    return parser


def _kernel_dispatch(args):
    if args.action in ("find", "check", "enumerate") and not args.graph:
        raise InputError(f"kernel {args.action} needs -g/--graph")
    if args.action == "check" and not args.kernel:
        raise InputError("kernel check needs --kernel")
    if args.action == "construct" and not args.family:
        raise InputError("kernel construct needs --family and --params")
    return _cmd_kernel(args)


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except FglError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
