"""Construction, validation and exhaustive enumeration of arguments.

An argument is a sequence of steps ``(rule, certain)`` where ``certain`` is
the one head disjunct the argument commits the rule to.  A sequence is valid
when every step is

1. grounded: its strong premises are certain literals of earlier steps;
2. uniquely read: every other head disjunct has its complement established
   by an earlier step;
3. non-redundant: no earlier step has the same certain literal, and no
   earlier step uses the same rule (``certain`` is a function of the rule).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from .bitset import bits as _bits
from .kb import ArgumentationSystem, Literal, Rule, RuleId

__all__ = ["Step", "Argument", "ArgumentCheck", "Bounds", "ArgumentSet",
           "BoundsExceeded", "validate_argument", "enumerate_arguments",
           "conclusions", "canonical_key", "canonical_order"]


class Step(NamedTuple):
    rule: Rule
    certain: Literal

    def requirements(self) -> set[Literal]:
        """Literals that must be certain earlier for this step to be valid."""
        need = set(self.rule.strong)
        need.update(l.complement() for l in self.rule.head if l != self.certain)
        return need

    def __str__(self):
        return f"{self.rule.id}={self.certain}"


class Argument:
    """An immutable ordered sequence of steps.

    Equality and hashing use :func:`canonical_key`, so two valid orderings of
    the same derivation are the same argument.
    """

    __slots__ = ("steps", "synthetic", "_key", "_concl", "_weak")

    def __init__(self, steps: Iterable[Step | tuple[Rule, Literal]] = (), synthetic: bool = False):
        self.steps: tuple[Step, ...] = tuple(Step(*s) for s in steps)
        self.synthetic = synthetic or any(s.rule.synthetic for s in self.steps)
        self._key = frozenset((s.rule.id, s.certain) for s in self.steps)
        self._concl: frozenset[Literal] | None = None
        self._weak: frozenset[Literal] | None = None

    @property
    def key(self) -> frozenset[tuple[RuleId, Literal]]:
        return self._key

    @property
    def empty(self) -> bool:
        return not self.steps

    @property
    def conclusions(self) -> frozenset[Literal]:
        if self._concl is None:
            self._concl = frozenset(s.certain for s in self.steps)
        return self._concl

    @property
    def weak_premises(self) -> frozenset[Literal]:
        if self._weak is None:
            self._weak = frozenset(l for s in self.steps for l in s.rule.weak)
        return self._weak

    @property
    def rules(self) -> tuple[Rule, ...]:
        return tuple(s.rule for s in self.steps)

    def __len__(self):
        return len(self.steps)

    def __iter__(self) -> Iterator[Step]:
        return iter(self.steps)

    def __eq__(self, other):
        if not isinstance(other, Argument):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Argument([{', '.join(map(str, self.steps))}])"

    def __str__(self):
        concl = ", ".join(sorted(map(str, self.conclusions)))
        return f"[{', '.join(map(str, self.steps))}] |- {{{concl}}}"


def conclusions(arg: Argument) -> frozenset[Literal]:
    return arg.conclusions


def canonical_key(arg: Argument) -> frozenset[tuple[RuleId, Literal]]:
    return arg.key


@dataclass(frozen=True)
class ArgumentCheck:
    ok: bool
    condition: int | None = None
    step: int | None = None
    message: str = ""

    def __bool__(self):
        return self.ok


def validate_argument(system: ArgumentationSystem, arg: Argument) -> ArgumentCheck:
    """Check the three step conditions in the given order.

    Synthetic steps are not looked up in ``system``; every other rule id must
    resolve there, else ``KeyError``.
    """
    certain: set[Literal] = set()
    used: set[RuleId] = set()
    for i, step in enumerate(arg.steps):
        rule = step.rule
        if not rule.synthetic and system.rule(rule.id) != rule:
            raise KeyError(str(rule.id))
        if step.certain not in rule.head:
            return ArgumentCheck(False, 2, i, f"{step.certain} is not a disjunct of {rule.id}")
        for p in rule.strong:
            if p not in certain:
                return ArgumentCheck(False, 1, i, f"strong premise {p} of {rule.id} is not grounded")
        for l in rule.head:
            if l != step.certain and l.complement() not in certain:
                return ArgumentCheck(False, 2, i, f"disjunct {l} of {rule.id} is not pruned")
        if step.certain in certain:
            return ArgumentCheck(False, 3, i, f"{step.certain} is already certain")
        if rule.id in used:
            return ArgumentCheck(False, 3, i, f"{rule.id} is already used")
        certain.add(step.certain)
        used.add(rule.id)
    return ArgumentCheck(True)


def canonical_order(steps: Iterable[Step], rank=None) -> tuple[Step, ...] | None:
    """Deterministic topological order of a step set, or ``None`` if no valid
    order exists.  Ties break on ``rank`` (default: rule id, then literal)."""
    pending = sorted(steps, key=rank or (lambda s: (s.rule.id, s.certain)))
    if len({s.certain for s in pending}) != len(pending):
        return None
    if len({s.rule.id for s in pending}) != len(pending):
        return None
    placed: list[Step] = []
    certain: set[Literal] = set()
    while pending:
        for i, s in enumerate(pending):
            if s.requirements() <= certain:
                placed.append(s)
                certain.add(s.certain)
                del pending[i]
                break
        else:
            return None
    return tuple(placed)


@dataclass(frozen=True)
class Bounds:
    max_steps: int = 32
    max_args: int = 100_000


class BoundsExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class ArgumentSet:
    system: ArgumentationSystem
    arguments: tuple[Argument, ...]
    truncated: bool = False
    reason: str = ""

    def __iter__(self):
        return iter(self.arguments)

    def __len__(self):
        return len(self.arguments)

    def __contains__(self, arg):
        return arg in set(self.arguments)

    def require_complete(self) -> "ArgumentSet":
        if self.truncated:
            raise BoundsExceeded(self.reason)
        return self


class _PairTable:
    """Integer encoding of every ``(rule, disjunct)`` choice in a system."""

    def __init__(self, system: ArgumentationSystem):
        self.literals = system.literals()
        self.lit_id = {l: i for i, l in enumerate(self.literals)}
        self.steps: list[Step] = []
        self.req: list[int] = []
        self.cert: list[int] = []
        self.same_rule: list[int] = []
        for rule in system.rules:
            first = len(self.steps)
            for q in rule.head:
                step = Step(rule, q)
                self.steps.append(step)
                mask = 0
                for l in step.requirements():
                    # A requirement on a literal nothing concludes can never
                    # be met; keep it as an out-of-range bit.
                    mask |= 1 << self.lit_id.get(l, len(self.literals))
                self.req.append(mask)
                self.cert.append(1 << self.lit_id[q])
            siblings = ((1 << len(self.steps)) - 1) ^ ((1 << first) - 1)
            self.same_rule.extend([siblings] * (len(self.steps) - first))


def enumerate_arguments(system: ArgumentationSystem, bounds: Bounds = Bounds()) -> ArgumentSet:
    """All valid arguments of ``system`` up to reordering, empty one included.

    Breadth-first forward chaining over step sets; the result is ordered by
    size, then by the sorted step indices.  Hitting either bound marks the
    result truncated instead of failing.
    """
    table = _PairTable(system)
    n = len(table.steps)
    seen = {0: 0}
    level = [(0, 0)]  # (step mask, certain mask)
    ordered = [0]
    truncated, reason = False, ""
    size = 0
    while level and not truncated:
        nxt: dict[int, int] = {}
        for mask, cert in level:
            for p in range(n):
                bit = 1 << p
                if mask & table.same_rule[p] or cert & table.cert[p] or table.req[p] & ~cert:
                    continue
                new = mask | bit
                if new in seen or new in nxt:
                    continue
                if size + 1 > bounds.max_steps:
                    truncated, reason = True, f"argument length exceeds max_steps={bounds.max_steps}"
                    break
                nxt[new] = cert | table.cert[p]
            if truncated:
                break
        size += 1
        new_masks = sorted(nxt, key=lambda m: tuple(_bits(m)))
        if len(ordered) + len(new_masks) > bounds.max_args:
            truncated, reason = True, f"argument count exceeds max_args={bounds.max_args}"
            new_masks = new_masks[:max(0, bounds.max_args - len(ordered))]
        for m in new_masks:
            seen[m] = nxt[m]
        ordered.extend(new_masks)
        level = [(m, nxt[m]) for m in new_masks]

    rank = {id(s): i for i, s in enumerate(table.steps)}
    args = []
    for mask in ordered:
        steps = [table.steps[p] for p in _bits(mask)]
        order = canonical_order(steps, rank=lambda s: rank[id(s)])
        assert order is not None
        args.append(Argument(order))
    return ArgumentSet(system, tuple(args), truncated, reason)


def build_argument(system: ArgumentationSystem, spec: Sequence[tuple[str, str]]) -> Argument:
    """Convenience constructor from ``("agent.rule", "literal")`` pairs, kept
    in the given order."""
    return Argument(Step(system.rule(rid), Literal.parse(lit)) for rid, lit in spec)
