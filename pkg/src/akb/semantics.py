"""Fixpoint semantics: justified, defeated and arguable arguments and literals."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Collection, Iterable

from . import kernels
from .arguments import Argument, Bounds
from .attacks import Framework, View, strictly_defeats
from .kb import ArgumentationSystem, Literal

__all__ = ["Status", "LiteralStatus", "StatusReport", "apply_pi", "least_fixpoint",
           "argument_status", "literal_status", "evaluate"]


class Status(enum.Enum):
    JUSTIFIED = "justified"
    DEFEATED = "defeated"
    ARGUABLE = "arguable"

    def __str__(self):
        return self.value


class LiteralStatus(enum.Enum):
    JUSTIFIED = "justified"
    OVERRULED = "overruled"
    ARGUABLE = "arguable"
    UNKNOWN = "unknown"

    def __str__(self):
        return self.value


def _framework(S: Iterable[Argument], system: ArgumentationSystem, view: View) -> Framework:
    return Framework(system, view, list(S))


def apply_pi(S: Collection[Argument], A: Iterable[Argument], system: ArgumentationSystem,
             view: View) -> set[Argument]:
    """Members of ``S`` all of whose defeaters are strictly defeated by some
    member of ``A``."""
    fw = _framework(S, system, view)
    out = kernels.get().apply_pi(fw.def_col, fw.strict_row, fw.mask(A))
    keep = set(S)
    return {a for a in fw.members(out) if a in keep}


def least_fixpoint(S: Collection[Argument], system: ArgumentationSystem, view: View) -> set[Argument]:
    fw = _framework(S, system, view)
    trace = kernels.get().fixpoint_trace(fw.def_col, fw.strict_row)
    keep = set(S)
    return {a for a in fw.members(trace[-1]) if a in keep}


def _classify(fw: Framework, lfp: int, i: int) -> Status:
    if lfp >> i & 1:
        return Status.JUSTIFIED
    if fw.strict_col[i] & lfp:
        return Status.DEFEATED
    return Status.ARGUABLE


def argument_status(arg: Argument, lfp: Collection[Argument], S: Collection[Argument],
                    system: ArgumentationSystem, view: View) -> Status:
    """Justified if in the least fixpoint ``lfp`` of ``S``, defeated if a
    member of it strictly defeats ``arg``, arguable otherwise."""
    if arg in lfp:
        return Status.JUSTIFIED
    if any(strictly_defeats(j, arg, system, view) for j in lfp):
        return Status.DEFEATED
    return Status.ARGUABLE


@dataclass
class StatusReport:
    view: View
    framework: Framework
    per_argument: dict[Argument, Status]
    per_literal: dict[Literal, LiteralStatus]
    trace: list[int]

    @property
    def iterations(self) -> int:
        return len(self.trace)

    @property
    def justified(self) -> set[Argument]:
        return set(self.framework.members(self.trace[-1]))

    def status(self, arg: Argument) -> Status:
        return self.per_argument[arg]

    def literal(self, lit: Literal | str) -> LiteralStatus:
        if isinstance(lit, str):
            lit = Literal.parse(lit)
        return self.per_literal.get(lit, LiteralStatus.UNKNOWN)

    def __repr__(self):
        return (f"StatusReport(view={self.view.value}, arguments={len(self.per_argument)}, "
                f"justified={len(self.justified)}, iterations={self.iterations})")


def _lift(statuses: Collection[Status]) -> LiteralStatus:
    if not statuses:
        return LiteralStatus.UNKNOWN
    if Status.JUSTIFIED in statuses:
        return LiteralStatus.JUSTIFIED
    if all(st is Status.DEFEATED for st in statuses):
        return LiteralStatus.OVERRULED
    return LiteralStatus.ARGUABLE


def literal_status(lit: Literal, report: StatusReport) -> LiteralStatus:
    """Lift argument statuses to a literal; auxiliary arguments are ignored."""
    return _lift([st for a, st in report.per_argument.items()
                  if not a.synthetic and lit in a.conclusions])


def evaluate(system: ArgumentationSystem, view: View = View.CREDULOUS,
             bounds: Bounds = Bounds(), framework: Framework | None = None) -> StatusReport:
    """Classify every argument and literal of ``system`` under ``view``.

    Raises :class:`~akb.arguments.BoundsExceeded` if the enumeration is
    truncated.
    """
    fw = framework or Framework(system, view, bounds=bounds)
    trace = kernels.get().fixpoint_trace(fw.def_col, fw.strict_row)
    lfp = trace[-1]
    per_argument = {a: _classify(fw, lfp, i) for i, a in enumerate(fw.arguments)}
    report = StatusReport(view, fw, per_argument, {}, trace)
    by_literal: dict[Literal, list[Status]] = {l: [] for l in system.literals()}
    for a, st in per_argument.items():
        if not a.synthetic:
            for l in a.conclusions:
                by_literal.setdefault(l, []).append(st)
    report.per_literal = {l: _lift(by_literal[l]) for l in sorted(by_literal)}
    return report
