"""Text, JSON and DOT renderings.  Every function is deterministic: the same
input always gives byte-identical output."""

from __future__ import annotations

import json
from typing import Any

from .arguments import Argument
from .attacks import Framework
from .dialectics import Move, ProofTree
from .kb import ArgumentationSystem, Literal
from .semantics import StatusReport

__all__ = ["argument_label", "arguments_text", "arguments_json", "attacks_text",
           "attacks_json", "status_text", "status_json", "proof_text", "proof_json",
           "graph_dot", "graph_json", "check_text", "check_json", "dumps"]


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _steps(arg: Argument) -> str:
    return ", ".join(f"{s.rule.id}={s.certain}" for s in arg.steps)


def _concls(arg: Argument) -> str:
    return ", ".join(str(l) for l in sorted(arg.conclusions))


def argument_label(arg: Argument, name: str | None = None) -> str:
    """``name [agent.rule=certain, ...] |- {conclusions}``"""
    body = f"[{_steps(arg)}] |- {{{_concls(arg)}}}"
    return f"{name} {body}" if name else body


def _arg_json(fw: Framework, i: int) -> dict:
    a = fw.arguments[i]
    return {"id": fw.name(i),
            "steps": [{"rule": str(s.rule.id), "certain": str(s.certain)} for s in a.steps],
            "conclusions": [str(l) for l in sorted(a.conclusions)],
            "synthetic": a.synthetic}


# -- check -------------------------------------------------------------------

def check_text(system: ArgumentationSystem) -> str:
    lines = [f"ok: {len(system.agents)} agent(s), {len(system.rules)} rule(s), "
             f"{len(system.literals())} literal(s)"]
    for agent in system.agents:
        lines.append(f"  {agent.id}: {', '.join(r.id.name for r in agent.rules)}")
    return "\n".join(lines) + "\n"


def check_json(system: ArgumentationSystem) -> str:
    return dumps({"ok": True,
                  "agents": [{"id": a.id, "rules": [r.id.name for r in a.rules]}
                             for a in system.agents],
                  "literals": [str(l) for l in system.literals()]})


# -- arguments ---------------------------------------------------------------

def arguments_text(fw: Framework) -> str:
    return "".join(argument_label(a, fw.name(i)) + "\n" for i, a in enumerate(fw.arguments))


def arguments_json(fw: Framework) -> str:
    return dumps({"view": fw.view.value,
                  "arguments": [_arg_json(fw, i) for i in range(len(fw))]})


# -- attacks -----------------------------------------------------------------

def _edge_rows(fw: Framework):
    for a, x, kind in fw.edges():
        (ar, al), (tr, tl) = fw.witness(a, x, kind)
        yield fw.name(a), fw.name(x), kind.value, f"{ar}={al}", f"{tr}={tl}"


def attacks_text(fw: Framework) -> str:
    rows = [f"{a} {kind} {x}  ({aw} vs {tw})" for a, x, kind, aw, tw in _edge_rows(fw)]
    return "".join(r + "\n" for r in rows)


def attacks_json(fw: Framework) -> str:
    return dumps({"view": fw.view.value,
                  "attacks": [{"attacker": a, "target": x, "kind": kind,
                               "attacker_step": aw, "target_step": tw}
                              for a, x, kind, aw, tw in _edge_rows(fw)]})


# -- status ------------------------------------------------------------------

def status_text(report: StatusReport, literal: Literal | None = None) -> str:
    if literal is not None:
        return f"{report.literal(literal)}\n"
    fw = report.framework
    rows = [("id", "rules", "conclusions", "status")]
    for i, a in enumerate(fw.arguments):
        rules = ",".join(str(s.rule.id) for s in a.steps) or "-"
        rows.append((fw.name(i), rules, "{" + _concls(a) + "}", str(report.status(a))))
    widths = [max(len(r[c]) for r in rows) for c in range(3)]
    lines = ["  ".join(r[c].ljust(widths[c]) for c in range(3)) + "  " + r[3] for r in rows]
    lines.append("")
    lines.append(f"literals ({report.view}, {report.iterations} iteration(s)):")
    width = max([len(str(l)) for l in report.per_literal] + [0])
    for lit, st in report.per_literal.items():
        lines.append(f"  {str(lit).ljust(width)}  {st}")
    return "\n".join(lines) + "\n"


def status_json(report: StatusReport, literal: Literal | None = None) -> str:
    if literal is not None:
        return dumps({"view": report.view.value, "literal": str(literal),
                      "status": str(report.literal(literal))})
    fw = report.framework
    args = []
    for i, a in enumerate(fw.arguments):
        row = _arg_json(fw, i)
        row["status"] = str(report.status(a))
        args.append(row)
    return dumps({"view": report.view.value,
                  "iterations": report.iterations,
                  "trace": [[fw.name(i) for i in range(len(fw)) if f >> i & 1]
                            for f in report.trace],
                  "arguments": args,
                  "literals": {str(l): str(s) for l, s in report.per_literal.items()}})


# -- proofs ------------------------------------------------------------------

def _move_line(fw: Framework, m: Move) -> str:
    via = "" if m.responds_to is None else f"  ({m.kind.value if m.kind else 'defeat'})"
    return f"{'  ' * (m.level - 1)}{m.player.value}: {argument_label(m.argument, fw.name(m.index))}{via}"


def proof_text(tree: ProofTree) -> str:
    fw = tree.framework
    lines = [_move_line(fw, m) for m in tree.root.walk()]
    lines.append(f"outcome: {tree.outcome}")
    return "\n".join(lines) + "\n"


def _move_json(fw: Framework, m: Move, counter: list[int]) -> dict:
    counter[0] += 1
    return {"move": counter[0], "player": m.player.value, "level": m.level,
            "argument": fw.name(m.index), "label": argument_label(m.argument),
            "attack": None if m.responds_to is None else (m.kind.value if m.kind else "defeat"),
            "children": [_move_json(fw, c, counter) for c in m.children]}


def proof_json(tree: ProofTree, literal: Literal | None = None) -> str:
    payload = {"view": tree.framework.view.value, "outcome": str(tree.outcome),
               "root": _move_json(tree.framework, tree.root, [0])}
    if literal is not None:
        payload["literal"] = str(literal)
    return dumps(payload)


# -- graphs ------------------------------------------------------------------

def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def graph_dot(fw: Framework) -> str:
    lines = ["digraph attacks {", "  rankdir=BT;", '  node [shape=box, fontname="monospace"];']
    for i, a in enumerate(fw.arguments):
        label = f'"{fw.name(i)}\\n{_dot_escape(argument_label(a))}"'
        extra = ", shape=ellipse, style=dashed" if a.synthetic else ""
        lines.append(f"  {fw.name(i)} [label={label}{extra}];")
    for a, x, kind in fw.edges():
        lines.append(f'  {fw.name(a)} -> {fw.name(x)} [label="{kind.value}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_json(fw: Framework) -> str:
    return dumps({"view": fw.view.value,
                  "nodes": [_arg_json(fw, i) for i in range(len(fw))],
                  "edges": [{"attacker": fw.name(a), "target": fw.name(x), "kind": k.value}
                            for a, x, k in fw.edges()]})
