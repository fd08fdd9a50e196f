"""Command-line surface: census, init, flop, explore, path, serve.

Exit codes: 0 success, 1 usage or parameter problems, 2 rewrite states the
engine refuses to extrapolate.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .configuration import (
    Configuration,
    FlopMove,
    apply_flop,
    initial_configuration,
    parse_vertex_id,
)
from .errors import ParameterError, UnsupportedStateError, WreathflopError
from .explorer import canonical_key, dumps_canonical, explore, export, shortest_flop_path
from .wreath import GroupParams, census


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; this CLI reserves 2 for engine errors
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wreathflop", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_census = sub.add_parser("census", parents=[], help="count group elements by fixed-space codimension")
    p_census.add_argument("--m", type=int, required=True, help="order of the cyclic factor")
    p_census.add_argument("--n", type=int, required=True, help="number of permuted blocks")
    p_census.add_argument("--json", action="store_true", help="emit the census as JSON")
    p_census.add_argument("--bound", type=int, default=None, help="override the enumeration bound")

    p_init = sub.add_parser("init", help="emit the starting configuration for a length-k chain")
    p_init.add_argument("--k", type=int, required=True)
    p_init.add_argument("--json", action="store_true", help="emit JSON (the default and only format)")
    p_init.add_argument("--out", default=None, help="write to FILE instead of stdout")

    p_flop = sub.add_parser("flop", help="apply one (possibly simultaneous) flop to a configuration")
    p_flop.add_argument("--in", dest="infile", default="-", help="configuration JSON file, '-' for stdin")
    p_flop.add_argument("--at", dest="centers", action="append", required=True, metavar="ID",
                        help="flop centre like P:1:1; repeat for a simultaneous move")
    p_flop.add_argument("--out", default=None, help="write to FILE instead of stdout")

    p_explore = sub.add_parser("explore", help="enumerate every configuration reachable by flops")
    p_explore.add_argument("--k", type=int, required=True)
    p_explore.add_argument("--mode", choices=["identity", "iso"], default="identity")
    p_explore.add_argument("--simultaneous", action="store_true", help="also take simultaneous moves as arcs")
    p_explore.add_argument("--max-depth", type=int, default=None)
    p_explore.add_argument("--workers", type=int, default=1)
    p_explore.add_argument("--dot", nargs="?", const="-", default=None, metavar="FILE",
                           help="write the flop graph as DOT ('-' or no value: stdout)")
    p_explore.add_argument("--json", nargs="?", const="-", default=None, metavar="FILE",
                           help="write the flop graph as JSON ('-' or no value: stdout)")

    p_path = sub.add_parser("path", help="shortest flop sequence between two configurations")
    p_path.add_argument("--k", type=int, required=True)
    p_path.add_argument("--from", dest="source", required=True, metavar="FILE")
    p_path.add_argument("--to", dest="target", required=True, metavar="FILE")

    p_serve = sub.add_parser("serve", help="run the HTTP stepping API")
    p_serve.add_argument("--port", type=int, default=8080)
    p_serve.add_argument("--k", type=int, default=2, help="default chain length for new sessions")
    return parser


def _read_config(path: str) -> Configuration:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParameterError(f"{path if path != '-' else 'stdin'}: not valid JSON ({err.msg} at line {err.lineno})")
    return Configuration.from_json_obj(obj)


def _write_text(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def _cmd_census(args: argparse.Namespace) -> int:
    params = GroupParams(args.m, args.n)
    kwargs = {} if args.bound is None else {"bound": args.bound}
    report = census(params, **kwargs)
    if args.json:
        sys.stdout.write(dumps_canonical(report.to_json_obj()))
    else:
        print(f"group order {report.order} (m={params.m}, n={params.n})")
        for codim, count in sorted(report.by_codim.items()):
            print(f"codim {codim}: {count}")
        print(f"symplectic reflections: {report.reflections}")
    return 0


def _cmd_init(args: argparse.Namespace) -> int:
    cfg = initial_configuration(args.k)
    _write_text(export(cfg, "json"), args.out)
    return 0


def _cmd_flop(args: argparse.Namespace) -> int:
    cfg = _read_config(args.infile)
    move = FlopMove(tuple(parse_vertex_id(text) for text in args.centers))
    result = apply_flop(cfg, move)
    _write_text(export(result, "json"), args.out)
    return 0


def _cmd_explore(args: argparse.Namespace) -> int:
    if args.dot == "-" and args.json == "-":
        raise ParameterError("only one of --dot and --json may stream to stdout")
    graph = explore(
        initial_configuration(args.k),
        simultaneous=args.simultaneous,
        mode=args.mode,
        max_depth=args.max_depth,
        workers=args.workers,
    )
    summary = (
        f"explored k={args.k} ({args.mode} mode): {len(graph.nodes)} nodes, "
        f"{len(graph.arcs)} arcs, {len(graph.dead_arcs)} dead arcs\n"
    )
    streamed = False
    if args.dot is not None:
        _write_text(export(graph, "dot"), args.dot)
        streamed = streamed or args.dot == "-"
    if args.json is not None:
        _write_text(export(graph, "json"), args.json)
        streamed = streamed or args.json == "-"
    (sys.stderr if streamed else sys.stdout).write(summary)
    return 0


def _cmd_path(args: argparse.Namespace) -> int:
    source = _read_config(args.source)
    target = _read_config(args.target)
    for name, cfg in (("--from", source), ("--to", target)):
        if cfg.k != args.k:
            raise ParameterError(f"{name} configuration has k={cfg.k}, expected k={args.k}")
    graph = explore(source)
    target_key = canonical_key(target)
    if target_key not in graph.nodes:
        raise ParameterError("the --to configuration is not reachable from --from by flops")
    moves = shortest_flop_path(graph, canonical_key(source), target_key)
    print(f"{len(moves)} flops")
    for move in moves:
        print("flop " + " ".join(str(v) for v in move.centers))
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    from .server import serve_forever

    serve_forever(port=args.port, default_k=args.k)
    return 0


_HANDLERS = {
    "census": _cmd_census,
    "init": _cmd_init,
    "flop": _cmd_flop,
    "explore": _cmd_explore,
    "path": _cmd_path,
    "serve": _cmd_serve,
}


def run(argv: Sequence[str] | None = None) -> int:
    """Parse argv and execute; returns the exit code instead of raising SystemExit."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return int(exit_.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except UnsupportedStateError as err:
        print(f"wreathflop: unsupported state: {err}", file=sys.stderr)
        return 2
    except WreathflopError as err:
        print(f"wreathflop: {err}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"wreathflop: {err}", file=sys.stderr)
        return 1


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
