"""Command-line front end: ``akb check|arguments|attacks|status|prove|graph``.

Exit codes: 0 success, 2 parse/validation/usage error, 3 enumeration bounds
exceeded, 4 ``--assert`` failed, 5 proof depth exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from typing import Sequence, TextIO

from . import render
from .arguments import Bounds, BoundsExceeded
from .attacks import Framework, View
from .dialectics import Outcome, Provable, Prover
from .kb import Literal, ValidationError
from .parser import ParseError, load
from .semantics import evaluate

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BOUNDS = 3
EXIT_ASSERT = 4
EXIT_DEPTH = 5

COMMANDS = ("check", "arguments", "attacks", "status", "prove", "graph")
ASSERTABLE = ("justified", "defeated", "arguable", "overruled", "unknown")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    paths: list[str]
    view: View = View.CREDULOUS
    bounds: Bounds = field(default_factory=Bounds)
    depth_limit: int | None = None
    fmt: str = "text"
    literal: Literal | None = None
    argument: str | None = None
    expect: str | None = None


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("paths", nargs="+", metavar="FILE", help=".akb knowledge base(s), merged")
    common.add_argument("--view", choices=[v.value for v in View], default="credulous")
    common.add_argument("--format", dest="fmt", choices=("text", "json", "dot"))
    common.add_argument("--max-args", type=int, default=Bounds.max_args, metavar="N")
    common.add_argument("--max-steps", type=int, default=Bounds.max_steps, metavar="N")

    p = argparse.ArgumentParser(prog="akb", description="Multi-agent argumentation engine.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", required=True)
    sub.add_parser("check", parents=[common], help="parse and validate")
    sub.add_parser("arguments", parents=[common], help="list every argument")
    sub.add_parser("attacks", parents=[common], help="list attack edges")
    st = sub.add_parser("status", parents=[common], help="classify arguments and literals")
    st.add_argument("--literal", metavar="LIT")
    st.add_argument("--assert", dest="expect", choices=ASSERTABLE)
    pr = sub.add_parser("prove", parents=[common], help="build a dialectical proof tree")
    pr.add_argument("--literal", metavar="LIT")
    pr.add_argument("--argument", metavar="ID", help="argument id as listed by `arguments`")
    pr.add_argument("--depth", type=int, metavar="N", help="depth limit (default 2|S|+1)")
    pr.add_argument("--assert", dest="expect", choices=ASSERTABLE)
    sub.add_parser("graph", parents=[common], help="attack graph (DOT by default)")
    return p


def parse_args(argv: Sequence[str]) -> RunConfig:
    ns = _parser().parse_args(list(argv))
    fmt = ns.fmt or ("dot" if ns.command == "graph" else "text")
    if fmt == "dot" and ns.command != "graph":
        raise UsageError("--format dot is only valid for `graph`")
    if fmt == "text" and ns.command == "graph":
        raise UsageError("`graph` supports --format dot or json")
    if ns.max_args < 1 or ns.max_steps < 1:
        raise UsageError("--max-args and --max-steps must be positive")
    literal = None
    if getattr(ns, "literal", None) is not None:
        try:
            literal = Literal.parse(ns.literal)
        except ValidationError as e:
            raise UsageError(str(e)) from None
    cfg = RunConfig(ns.command, ns.paths, View(ns.view), Bounds(ns.max_steps, ns.max_args),
                    getattr(ns, "depth", None), fmt, literal,
                    getattr(ns, "argument", None), getattr(ns, "expect", None))
    if cfg.command == "status" and cfg.expect and cfg.literal is None:
        raise UsageError("--assert on `status` requires --literal")
    if cfg.command == "prove" and (cfg.literal is None) == (cfg.argument is None):
        raise UsageError("`prove` needs exactly one of --literal or --argument")
    if cfg.depth_limit is not None and cfg.depth_limit < 1:
        raise UsageError("--depth must be positive")
    return cfg


def _argument_index(fw: Framework, name: str) -> int:
    for i in range(len(fw)):
        if fw.name(i) == name:
            return i
    raise UsageError(f"no argument named {name!r}")


def _literal_provable(fw: Framework, prover: Prover, lit: Literal) -> str | None:
    """Literal status from provable statuses; ``None`` when a depth limit
    leaves it undecided."""
    statuses = prover.provable()
    mine = [statuses[i] for i, a in enumerate(fw.arguments)
            if not a.synthetic and lit in a.conclusions]
    if not mine:
        return "unknown"
    if Provable.JUSTIFIED in mine:
        return "justified"
    if Provable.INDETERMINATE in mine:
        return None
    if all(s is Provable.DEFEATED for s in mine):
        return "overruled"
    return "arguable"


def _prove(cfg: RunConfig, fw: Framework, out: TextIO) -> int:
    prover = Prover(fw, cfg.depth_limit)
    if cfg.argument is not None:
        i = _argument_index(fw, cfg.argument)
        tree = prover.tree(i)
        found = {Provable.JUSTIFIED: "justified", Provable.DEFEATED: "defeated",
                 Provable.ARGUABLE: "arguable"}.get(prover.provable()[i])
    else:
        candidates = [i for i, a in enumerate(fw.arguments)
                      if not a.synthetic and cfg.literal in a.conclusions]
        if not candidates:
            if cfg.fmt == "json":
                out.write(render.dumps({"view": fw.view.value, "literal": str(cfg.literal),
                                        "outcome": None, "root": None}))
            else:
                out.write(f"no argument concludes {cfg.literal}\n")
            return _check_assert(cfg, "unknown")
        outcomes = {i: prover.result(i) for i in candidates}
        pick = next((i for want in (Outcome.PROPONENT_WINS, Outcome.DEPTH_EXCEEDED)
                     for i in candidates if outcomes[i] is want), candidates[0])
        tree = prover.tree(pick)
        found = _literal_provable(fw, prover, cfg.literal)
    out.write(render.proof_json(tree, cfg.literal) if cfg.fmt == "json" else render.proof_text(tree))
    if found is None:
        print(f"akb: depth limit {prover.depth_limit} exceeded", file=sys.stderr)
        return EXIT_DEPTH
    return _check_assert(cfg, found)


def _check_assert(cfg: RunConfig, found: str) -> int:
    if cfg.expect is not None and cfg.expect != found:
        print(f"akb: assertion failed: expected {cfg.expect}, got {found}", file=sys.stderr)
        return EXIT_ASSERT
    return EXIT_OK


def execute(cfg: RunConfig, out: TextIO) -> int:
    system = load(*cfg.paths)
    json_out = cfg.fmt == "json"
    if cfg.command == "check":
        out.write(render.check_json(system) if json_out else render.check_text(system))
        return EXIT_OK
    fw = Framework(system, cfg.view, bounds=cfg.bounds)
    if cfg.command == "arguments":
        out.write(render.arguments_json(fw) if json_out else render.arguments_text(fw))
    elif cfg.command == "attacks":
        out.write(render.attacks_json(fw) if json_out else render.attacks_text(fw))
    elif cfg.command == "graph":
        out.write(render.graph_json(fw) if json_out else render.graph_dot(fw))
    elif cfg.command == "status":
        report = evaluate(system, cfg.view, cfg.bounds, framework=fw)
        out.write(render.status_json(report, cfg.literal) if json_out
                  else render.status_text(report, cfg.literal))
        if cfg.expect is not None:
            return _check_assert(cfg, str(report.literal(cfg.literal)))
    elif cfg.command == "prove":
        return _prove(cfg, fw, out)
    return EXIT_OK


def run(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    """Run one command; returns the exit code."""
    out = out or sys.stdout
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
    except SystemExit as e:  # argparse already printed usage
        return EXIT_OK if e.code == 0 else EXIT_INVALID
    except UsageError as e:
        print(f"akb: error: {e}", file=sys.stderr)
        return EXIT_INVALID
    try:
        return execute(cfg, out)
    except ParseError as e:
        for d in e.diagnostics:
            print(d, file=sys.stderr)
        return EXIT_INVALID
    except BrokenPipeError:
        raise
    except (ValidationError, OSError, UsageError) as e:
        print(f"akb: error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except BoundsExceeded as e:
        print(f"akb: bounds exceeded: {e}", file=sys.stderr)
        return EXIT_BOUNDS


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = EXIT_OK
    sys.exit(code)


if __name__ == "__main__":
    main()
