"""Attack relations between arguments and the per-view defeat relation.

Undercut and rebut are the usual intra-system conflicts.  Thinning is an
inter-agent conflict: a rule of one agent whose condition equals that of a
rule of another agent but whose head is strictly larger weakens the certainty
of the smaller rule.  The residual disjuncts become single-headed auxiliary
rules, grounded into auxiliary arguments that defeat every argument relying
on the thinned rule.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels
from .arguments import Argument, Bounds, Step, enumerate_arguments
from .bitset import bits as _bits
from .kb import ArgumentationSystem, Literal, Rule, RuleId

__all__ = ["View", "AttackKind", "AttackEdge", "undercuts", "rebuts", "thins",
           "similar", "auxiliary_rules", "auxiliary_arguments",
           "generalized_reduction", "thinning_attackers", "defeats",
           "strictly_defeats", "attack_graph", "Framework"]


class View(enum.Enum):
    CREDULOUS = "credulous"
    SKEPTICAL = "skeptical"
    GENERALIZED = "generalized"

    @property
    def thinning(self) -> bool:
        return self is not View.CREDULOUS

    def __str__(self):
        return self.value


class AttackKind(enum.Enum):
    UNDERCUT = "undercut"
    REBUT = "rebut"
    THINNING = "thinning"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class AttackEdge:
    attacker: Argument
    target: Argument
    kind: AttackKind
    # ((attacker rule, literal), (target rule, literal))
    witness: tuple[tuple[RuleId, Literal], tuple[RuleId, Literal]]


def _undercut_witness(a: Argument, b: Argument):
    for step in a.steps:
        for s in b.steps:
            if step.certain in s.rule.weak:
                return (step.rule.id, step.certain), (s.rule.id, step.certain)
    return None


def _rebut_witness(a: Argument, b: Argument, system: ArgumentationSystem):
    by_literal = {s.certain: s for s in b.steps}
    for step in a.steps:
        other = by_literal.get(step.certain.complement())
        if other is not None and not system.rule_preferred(other.rule, step.rule):
            return (step.rule.id, step.certain), (other.rule.id, other.certain)
    return None


def undercuts(a: Argument, b: Argument) -> bool:
    """Some certain literal of ``a`` is a weak premise of a rule in ``b``."""
    return bool(a.conclusions & b.weak_premises)


def rebuts(a: Argument, b: Argument, system: ArgumentationSystem) -> bool:
    """Some step of ``a`` concludes the complement of a step of ``b`` and the
    rule of ``b`` is not preferred over that of ``a``."""
    return _rebut_witness(a, b, system) is not None


def thins(r1: Rule, r2: Rule) -> bool:
    """``r1`` thins ``r2``: different agents, equal conditions and
    ``head(r2)`` a strict subset of ``head(r1)``."""
    return (r1.pref_id.agent != r2.pref_id.agent
            and r1.condition == r2.condition
            and set(r2.head) < set(r1.head))


def similar(rc: Rule, rd: Rule) -> bool:
    """Rules of different agents with equal conditions whose heads intersect
    without either containing the other."""
    hc, hd = set(rc.head), set(rd.head)
    return (rc.pref_id.agent != rd.pref_id.agent
            and rc.condition == rd.condition
            and bool(hc & hd) and not hc <= hd and not hd <= hc)


def _residual_rules(source: Rule, residual: Iterable[Literal]) -> tuple[Rule, ...]:
    # Named after the rule they stand in for; the name is a function of the
    # rule content, so equal auxiliary rules get equal ids.
    return tuple(
        Rule(RuleId(source.id.agent, f"{source.id.name}^{q}"), source.strong,
             source.weak, (q,), alias_of=source.pref_id)
        for q in residual)


def auxiliary_rules(r1: Rule, r2: Rule) -> tuple[Rule, ...]:
    """``{Cd(r1) -> q | q in head(r1) - head(r2)}``, each an alias of ``r1``."""
    if not thins(r1, r2):
        raise ValueError(f"{r1.id} does not thin {r2.id}")
    return _residual_rules(r1, [q for q in r1.head if q not in r2.head])


def generalized_reduction(step: Step, rd: Rule) -> tuple[Rule, ...]:
    """Reduce an intersecting pair to the subsumption case.

    When the certain literal of ``step`` lies in the shared part of the two
    heads, the step's rule degenerates to that shared part and ``rd`` thins
    it: the result is one auxiliary rule per disjunct only ``rd`` has.
    Otherwise the conflict disappears and the result is empty.
    """
    rc = step.rule
    if not similar(rc, rd):
        raise ValueError(f"{rc.id} and {rd.id} are not similar")
    if step.certain in rd.head:
        return _residual_rules(rd, [q for q in rd.head if q not in rc.head])
    return ()


def _support(target: Argument, literals: Iterable[Literal]) -> list[Step]:
    """The smallest sub-sequence of ``target`` deriving ``literals``."""
    by_literal = {s.certain: s for s in target.steps}
    needed: set[Step] = set()
    stack = [by_literal[l] for l in literals]
    while stack:
        s = stack.pop()
        if s in needed:
            continue
        needed.add(s)
        stack.extend(by_literal[l] for l in s.requirements())
    return [s for s in target.steps if s in needed]


def _ground(target: Argument, aux: Iterable[Rule]) -> list[Argument]:
    out = []
    for rule in aux:
        prefix = _support(target, rule.strong)
        out.append(Argument(prefix + [Step(rule, rule.head[0])], synthetic=True))
    return out


def auxiliary_arguments(target: Argument, r1: Rule, step: Step) -> list[Argument]:
    """Ground ``auxiliary_rules(r1, step.rule)`` on the part of ``target``
    deriving the shared condition."""
    if step not in target.steps:
        raise ValueError(f"{step} is not a step of the target")
    return _ground(target, auxiliary_rules(r1, step.rule))


class _Conflicts:
    """Per-system index: rule id -> thinning rules and similar rules."""

    def __init__(self, system: ArgumentationSystem):
        rules = system.rules
        self.thinners = {r.id: [t for t in rules if thins(t, r)] for r in rules}
        self.similars = {r.id: [t for t in rules if similar(r, t)] for r in rules}


def _conflicts(system: ArgumentationSystem) -> _Conflicts:
    # Systems are immutable, so the index is memoized on the instance.
    found = system.__dict__.get("_conflict_index")
    if found is None:
        found = _Conflicts(system)
        object.__setattr__(system, "_conflict_index", found)
    return found


def thinning_attackers(target: Argument, system: ArgumentationSystem, view: View) -> list[Argument]:
    """Auxiliary arguments generated against ``target`` under ``view``."""
    if not view.thinning:
        return []
    index = _conflicts(system)
    out: dict[Argument, None] = {}
    for step in target.steps:
        if step.rule.synthetic:
            continue
        for r1 in index.thinners.get(step.rule.id, ()):
            out.update(dict.fromkeys(_ground(target, auxiliary_rules(r1, step.rule))))
        if view is View.GENERALIZED:
            for rd in index.similars.get(step.rule.id, ()):
                out.update(dict.fromkeys(_ground(target, generalized_reduction(step, rd))))
    return list(out)


def defeats(a: Argument, b: Argument, system: ArgumentationSystem, view: View) -> bool:
    if a.empty and undercuts(b, b):
        return True
    if undercuts(a, b):
        return True
    if rebuts(a, b, system) and not undercuts(b, a):
        return True
    return a.synthetic and a in thinning_attackers(b, system, view)


def strictly_defeats(a: Argument, b: Argument, system: ArgumentationSystem, view: View) -> bool:
    return defeats(a, b, system, view) and not defeats(b, a, system, view)


class Framework:
    """The argument set ``S`` of a system under one view, with its attack and
    defeat relations precomputed as bitsets.

    ``S`` is the full enumeration (or the given ``arguments``) plus, outside
    the credulous view, every auxiliary argument generated against a member.
    """

    def __init__(self, system: ArgumentationSystem, view: View = View.CREDULOUS,
                 arguments: Sequence[Argument] | None = None, bounds: Bounds = Bounds()):
        self.system = system
        self.view = view
        if arguments is None:
            arguments = enumerate_arguments(system, bounds).require_complete().arguments
        args: list[Argument] = list(dict.fromkeys(arguments))
        index = {a: i for i, a in enumerate(args)}
        thin: dict[int, set[int]] = {}
        if view.thinning:
            i = 0
            while i < len(args):
                for aux in thinning_attackers(args[i], system, view):
                    j = index.get(aux)
                    if j is None:
                        j = index[aux] = len(args)
                        args.append(aux)
                    thin.setdefault(j, set()).add(i)
                i += 1
        self.arguments: tuple[Argument, ...] = tuple(args)
        self.index = index
        self.n_base = sum(not a.synthetic for a in args)
        self._build(thin)

    def _build(self, thin: dict[int, set[int]]):
        self.thin_targets = [sorted(thin.get(i, ())) for i in range(len(self.arguments))]
        (self.undercut_col, self.rebut_col, self.thin_col,
         self.def_col, self.def_row) = kernels.get().defeat_relation(*self.kernel_inputs())
        self.strict_col = [c & ~r for c, r in zip(self.def_col, self.def_row)]
        self.strict_row = [r & ~c for c, r in zip(self.def_col, self.def_row)]

    def kernel_inputs(self) -> tuple:
        """Integer-coded arguments for ``defeat_relation``: literal and step
        counts, per-argument conclusion, weak-premise and step ids, the
        rebut table over steps, the empty argument's index and the thinning
        targets."""
        args = self.arguments
        lit_id: dict[Literal, int] = {}
        step_id: dict[tuple[RuleId, Literal], int] = {}
        steps: list[Step] = []
        concl, weak, pairs = [], [], []
        for a in args:
            concl.append([lit_id.setdefault(s.certain, len(lit_id)) for s in a.steps])
            weak.append([lit_id.setdefault(l, len(lit_id)) for l in a.weak_premises])
            ids = []
            for s in a.steps:
                key = (s.rule.id, s.certain)
                if key not in step_id:
                    step_id[key] = len(steps)
                    steps.append(s)
                ids.append(step_id[key])
            pairs.append(ids)
        by_literal: dict[Literal, list[int]] = {}
        for k, s in enumerate(steps):
            by_literal.setdefault(s.certain, []).append(k)
        rebuts = []
        for s in steps:
            rebuts.append([k for k in by_literal.get(s.certain.complement(), ())
                           if not self.system.rule_preferred(steps[k].rule, s.rule)])
        empty = self.index.get(Argument(), -1)
        return (len(lit_id), len(steps), concl, weak, pairs, rebuts, empty, self.thin_targets)

    def __len__(self):
        return len(self.arguments)

    def name(self, i: int) -> str:
        if i < self.n_base:
            return f"arg{i}"
        return f"aux{i - self.n_base}"

    def defeats(self, a: int, x: int) -> bool:
        return bool(self.def_col[x] >> a & 1)

    def strictly_defeats(self, a: int, x: int) -> bool:
        return bool(self.strict_col[x] >> a & 1)

    def defeaters(self, x: int) -> list[int]:
        return _bits(self.def_col[x])

    def strict_defeaters(self, x: int) -> list[int]:
        return _bits(self.strict_col[x])

    def members(self, mask: int) -> list[Argument]:
        return [self.arguments[i] for i in _bits(mask)]

    def mask(self, args: Iterable[Argument]) -> int:
        m = 0
        for a in args:
            m |= 1 << self.index[a]
        return m

    def edges(self) -> list[tuple[int, int, AttackKind]]:
        """Every attack as ``(attacker, target, kind)``, ordered by target,
        attacker, kind."""
        out = []
        for x in range(len(self.arguments)):
            for kind, col in ((AttackKind.UNDERCUT, self.undercut_col[x]),
                              (AttackKind.REBUT, self.rebut_col[x]),
                              (AttackKind.THINNING, self.thin_col[x])):
                out.extend((a, x, kind) for a in _bits(col))
        out.sort(key=lambda e: (e[1], e[0], e[2].value))
        return out

    def witness(self, a: int, x: int, kind: AttackKind):
        att, tgt = self.arguments[a], self.arguments[x]
        if kind is AttackKind.UNDERCUT:
            return _undercut_witness(att, tgt)
        if kind is AttackKind.REBUT:
            return _rebut_witness(att, tgt, self.system)
        aux = att.steps[-1]
        thinned = next(s for s in tgt.steps if _thinned_by(s, aux.rule, self.system, self.view))
        return (aux.rule.id, aux.certain), (thinned.rule.id, thinned.certain)

    def attack_edges(self) -> list[AttackEdge]:
        return [AttackEdge(self.arguments[a], self.arguments[x], kind, self.witness(a, x, kind))
                for a, x, kind in self.edges()]


def _thinned_by(step: Step, aux: Rule, system: ArgumentationSystem, view: View) -> bool:
    if step.rule.synthetic:
        return False
    source = system.rule(aux.alias_of)
    if thins(source, step.rule) and aux in auxiliary_rules(source, step.rule):
        return True
    return (view is View.GENERALIZED and similar(step.rule, source)
            and aux in generalized_reduction(step, source))


def attack_graph(arguments: Sequence[Argument], system: ArgumentationSystem,
                 view: View) -> list[AttackEdge]:
    """All attack edges among ``arguments`` and the auxiliary arguments
    generated against them, in deterministic order."""
    return Framework(system, view, arguments).attack_edges()
