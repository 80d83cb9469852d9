"""Dialectical proof procedure: argument trees built by a proponent and an
opponent, and a harness that checks them against the fixpoint semantics.

The proponent must strictly defeat every opponent move; the opponent may
answer with any defeater.  By default the proponent may not reuse an argument
on a branch while the opponent may, which is the variant that coincides with
the least fixpoint.  ``NoRepeat.OPPONENT`` forbids opponent repeats instead.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator

from . import kernels
from .arguments import Argument, Bounds
from .attacks import AttackKind, Framework, View
from .bitset import bits as _bits
from .kb import ArgumentationSystem, Literal
from .semantics import Status, evaluate

__all__ = ["Player", "Outcome", "NoRepeat", "Move", "ProofTree", "Provable",
           "Prover", "SearchBudgetExceeded", "prove", "prove_literal", "provable_status", "cross_check",
           "CrossCheckReport"]


class Player(enum.Enum):
    PROPONENT = "P"
    OPPONENT = "O"


class Outcome(enum.Enum):
    PROPONENT_WINS = "proponent-wins"
    OPPONENT_WINS = "opponent-wins"
    DEPTH_EXCEEDED = "depth-exceeded"

    def __str__(self):
        return self.value


class NoRepeat(enum.Enum):
    """Which player is barred from repeating an argument on a branch."""
    PROPONENT = "proponent"
    OPPONENT = "opponent"


class Provable(enum.Enum):
    JUSTIFIED = "provably-justified"
    DEFEATED = "provably-defeated"
    ARGUABLE = "provably-arguable"
    INDETERMINATE = "indeterminate"

    def __str__(self):
        return self.value


_STATUS_OF = {Provable.JUSTIFIED: Status.JUSTIFIED, Provable.DEFEATED: Status.DEFEATED,
              Provable.ARGUABLE: Status.ARGUABLE}

# three-valued search result
_WIN, _LOSE, _UNKNOWN = 1, 0, -1


@dataclass
class Move:
    player: Player
    argument: Argument
    index: int
    level: int
    responds_to: "Move | None" = field(default=None, repr=False)
    kind: AttackKind | None = None
    children: list["Move"] = field(default_factory=list)

    def walk(self) -> Iterator["Move"]:
        yield self
        for c in self.children:
            yield from c.walk()

    def branches(self) -> Iterator[list["Move"]]:
        if not self.children:
            yield [self]
            return
        for c in self.children:
            for b in c.branches():
                yield [self] + b


@dataclass
class ProofTree:
    root: Move
    outcome: Outcome
    framework: Framework = field(repr=False)

    @property
    def won(self) -> bool:
        return self.outcome is Outcome.PROPONENT_WINS

    def moves(self) -> list[Move]:
        return list(self.root.walk())

    def depth(self) -> int:
        return max(m.level for m in self.root.walk())


class _Lazy:
    """Per-argument adjacency lists decoded from bitsets on first use."""

    def __init__(self, fn, n: int):
        self._fn = fn
        self._cache: list[list[int] | None] = [None] * n

    def __getitem__(self, i: int) -> list[int]:
        got = self._cache[i]
        if got is None:
            got = self._cache[i] = self._fn(i)
        return got


class SearchBudgetExceeded(RuntimeError):
    pass


class Prover:
    """Proof search over one framework, memoized across queries.

    Two engines decide who wins a tree.  ``search`` plays the game as
    stated, tracking the barred arguments of each branch.  ``height`` is
    only available under the proponent no-repeat rule, where a win exists
    iff a win of bounded height exists (choosing answers of strictly smaller
    height never repeats a proponent argument); it computes the minimal
    winning height of every argument bottom-up.  ``auto`` runs ``search``
    within ``budget`` expanded nodes and falls back to ``height``.
    """

    def __init__(self, framework: Framework, depth_limit: int | None = None,
                 no_repeat: NoRepeat = NoRepeat.PROPONENT, engine: str = "auto",
                 budget: int = 20_000):
        if engine not in ("auto", "search", "height"):
            raise ValueError(f"unknown engine {engine!r}")
        if engine == "height" and no_repeat is not NoRepeat.PROPONENT:
            raise ValueError("the height engine requires the proponent no-repeat rule")
        self.fw = framework
        self.depth_limit = depth_limit if depth_limit is not None else 2 * len(framework) + 1
        self.no_repeat = no_repeat
        self._defeaters = _Lazy(framework.defeaters, len(framework))
        self._strict = _Lazy(framework.strict_defeaters, len(framework))
        # (argument, barred set) -> (result, levels left when computed)
        self._memo: dict[tuple[int, int], tuple[int, int]] = {}
        self._height: list[int] | None = None
        self._budget = budget if engine == "auto" and no_repeat is NoRepeat.PROPONENT else None
        self._expanded = 0
        self.engine = "height" if engine == "height" else "search"

    # -- exhaustive game search ------------------------------------------

    def _win(self, x: int, barred: int, level: int) -> int:
        """Can the proponent defend ``x`` played at ``level``?

        ``barred`` holds the arguments the restricted player may no longer
        use on this branch.
        """
        left = self.depth_limit - level
        key = (x, barred)
        hit = self._memo.get(key)
        if hit is not None and (hit[0] != _UNKNOWN or hit[1] >= left):
            return hit[0]
        if self._budget is not None:
            self._expanded += 1
            if self._expanded > self._budget:
                raise SearchBudgetExceeded
        result = self._search(x, barred, level)
        self._memo[key] = (result, left)
        return result

    def _search(self, x: int, barred: int, level: int) -> int:
        p_rule = self.no_repeat is NoRepeat.PROPONENT
        if p_rule:
            barred |= 1 << x
        result = _WIN
        for y in self._defeaters[x]:
            if not p_rule and barred >> y & 1:
                continue
            if level + 1 > self.depth_limit:
                return _UNKNOWN
            r = self._answer(y, barred if p_rule else barred | 1 << y, level + 1)
            if r == _LOSE:
                return _LOSE
            if r == _UNKNOWN:
                result = _UNKNOWN
        return result

    def _answer(self, y: int, barred: int, level: int) -> int:
        """Best result for the proponent answering opponent move ``y``."""
        p_rule = self.no_repeat is NoRepeat.PROPONENT
        result = _LOSE
        for z in self._strict[y]:
            if p_rule and barred >> z & 1:
                continue
            if level + 1 > self.depth_limit:
                result = _UNKNOWN
                continue
            r = self._win(z, barred, level + 1)
            if r == _WIN:
                return _WIN
            if r == _UNKNOWN:
                result = _UNKNOWN
        return result

    # -- minimal winning heights -----------------------------------------

    def heights(self) -> list[int]:
        """Minimal number of proponent levels of a winning tree per
        argument, ``0`` where the proponent cannot win.

        An argument whose defeaters are all strictly defeated by arguments
        of height below ``k`` wins with height ``k``; that is exactly the
        step at which it enters the fixpoint iteration, so the heights are
        read off the trace.
        """
        if self._height is None:
            fw = self.fw
            trace = kernels.get().fixpoint_trace(fw.def_col, fw.strict_row)
            height = [0] * len(fw)
            prev = 0
            for k, members in enumerate(trace, 1):
                for x in _bits(members & ~prev):
                    height[x] = k
                prev = members
            self._height = height
        return self._height

    def _result_by_height(self, x: int) -> int:
        h = self.heights()[x]
        if not h:
            return _LOSE
        return _WIN if 2 * h - 1 <= self.depth_limit else _UNKNOWN

    # -- queries ---------------------------------------------------------

    def _result(self, x: int) -> int:
        if self.engine == "search":
            try:
                return self._win(x, 0, 1)
            except SearchBudgetExceeded:
                self.engine = "height"
                self._memo.clear()
        return self._result_by_height(x)

    def result(self, x: int) -> Outcome:
        return {_WIN: Outcome.PROPONENT_WINS, _LOSE: Outcome.OPPONENT_WINS,
                _UNKNOWN: Outcome.DEPTH_EXCEEDED}[self._result(x)]

    def _kind(self, attacker: int, target: int) -> AttackKind | None:
        fw = self.fw
        for kind, col in ((AttackKind.UNDERCUT, fw.undercut_col),
                          (AttackKind.REBUT, fw.rebut_col),
                          (AttackKind.THINNING, fw.thin_col)):
            if col[target] >> attacker & 1:
                return kind
        return None  # the empty argument against a self-undercutting target

    def tree(self, x: int) -> ProofTree:
        outcome = self.result(x)
        root = Move(Player.PROPONENT, self.fw.arguments[x], x, 1)
        try:
            self._grow(root, 0)
        except SearchBudgetExceeded:
            self.engine = "height"
            self._memo.clear()
            root.children.clear()
            self._grow(root, 0)
        return ProofTree(root, outcome, self.fw)

    def _answers(self, y: int, barred: int, level: int, parent_height: int):
        # Proponent answers to ``y`` in search order, winners only.
        p_rule = self.no_repeat is NoRepeat.PROPONENT
        for z in self._strict[y]:
            if p_rule and barred >> z & 1:
                continue
            if level + 1 > self.depth_limit:
                return
            if self.engine == "height":
                h = self.heights()[z]
                if h and h < parent_height:
                    yield z
            elif self._win(z, barred, level + 1) == _WIN:
                yield z

    def _grow(self, move: Move, barred: int):
        # Materializes every opponent option and the first successful
        # proponent answer to each.
        p_rule = self.no_repeat is NoRepeat.PROPONENT
        x, level = move.index, move.level
        if p_rule:
            barred |= 1 << x
        height = self.heights()[x] if self.engine == "height" else 0
        for y in self._defeaters[x]:
            if not p_rule and barred >> y & 1:
                continue
            if level + 1 > self.depth_limit:
                return
            o_barred = barred if p_rule else barred | 1 << y
            o = Move(Player.OPPONENT, self.fw.arguments[y], y, level + 1, move, self._kind(y, x))
            move.children.append(o)
            if self.engine == "height" and not height:
                continue  # lost tree: show the opponent's options only
            for z in self._answers(y, o_barred, level + 1, height):
                p = Move(Player.PROPONENT, self.fw.arguments[z], z, level + 2, o,
                         self._kind(z, y))
                o.children.append(p)
                self._grow(p, o_barred)
                break

    def provable(self) -> list[Provable]:
        """Provable status of every argument of the framework."""
        n = len(self.fw)
        outcome = [self.result(x) for x in range(n)]
        if self.engine == "height":
            # a fallback may have happened midway; recompute uniformly
            outcome = [self.result(x) for x in range(n)]
        out = []
        for x in range(n):
            if outcome[x] is Outcome.PROPONENT_WINS:
                out.append(Provable.JUSTIFIED)
            elif outcome[x] is Outcome.DEPTH_EXCEEDED:
                out.append(Provable.INDETERMINATE)
            else:
                st = [outcome[z] for z in self._strict[x]]
                if Outcome.PROPONENT_WINS in st:
                    out.append(Provable.DEFEATED)
                elif Outcome.DEPTH_EXCEEDED in st:
                    out.append(Provable.INDETERMINATE)
                else:
                    out.append(Provable.ARGUABLE)
        return out


def _framework(S, system: ArgumentationSystem, view: View) -> Framework:
    if isinstance(S, Framework):
        return S
    return Framework(system, view, None if S is None else list(S))


def prove(arg: Argument, S, system: ArgumentationSystem, view: View,
          depth_limit: int | None = None, no_repeat: NoRepeat = NoRepeat.PROPONENT) -> ProofTree:
    """Build the argument tree rooted at ``arg``.

    ``S`` is the argument set (a :class:`Framework` is reused as is; ``None``
    enumerates the system).  The default depth limit is ``2|S| + 1``.
    """
    fw = _framework(S, system, view)
    return Prover(fw, depth_limit, no_repeat).tree(fw.index[arg])


def prove_literal(lit: Literal | str, fw: Framework, depth_limit: int | None = None,
                  no_repeat: NoRepeat = NoRepeat.PROPONENT) -> ProofTree | None:
    """Prove some non-synthetic argument concluding ``lit``.

    Candidates are tried in framework order; the first winning tree is
    returned, else the first depth-exceeded one, else the first lost one.
    ``None`` if nothing concludes ``lit``.
    """
    if isinstance(lit, str):
        lit = Literal.parse(lit)
    prover = Prover(fw, depth_limit, no_repeat)
    candidates = [i for i, a in enumerate(fw.arguments)
                  if not a.synthetic and lit in a.conclusions]
    if not candidates:
        return None
    outcomes = {i: prover.result(i) for i in candidates}
    for wanted in (Outcome.PROPONENT_WINS, Outcome.DEPTH_EXCEEDED):
        for i in candidates:
            if outcomes[i] is wanted:
                return prover.tree(i)
    return prover.tree(candidates[0])


def provable_status(arg: Argument, S, system: ArgumentationSystem, view: View,
                    depth_limit: int | None = None,
                    no_repeat: NoRepeat = NoRepeat.PROPONENT) -> Provable:
    fw = _framework(S, system, view)
    return Prover(fw, depth_limit, no_repeat).provable()[fw.index[arg]]


@dataclass
class CrossCheckReport:
    view: View
    n_arguments: int
    # (argument, fixpoint status, provable status)
    disagreements: list[tuple[Argument, Status, Provable]]
    indeterminate: int
    engine: str = "search"

    @property
    def ok(self) -> bool:
        return not self.disagreements


def cross_check(system: ArgumentationSystem, view: View, bounds: Bounds = Bounds(),
                depth_limit: int | None = None, no_repeat: NoRepeat = NoRepeat.PROPONENT,
                framework: Framework | None = None, engine: str = "auto") -> CrossCheckReport:
    """Compare provable statuses with fixpoint statuses on every argument."""
    fw = framework or Framework(system, view, bounds=bounds)
    report = evaluate(system, view, bounds, framework=fw)
    if depth_limit is None:
        depth_limit = 2 * len(fw) + 1
    prover = Prover(fw, depth_limit, no_repeat, engine=engine)
    provable = prover.provable()
    bad = []
    for a, p in zip(fw.arguments, provable):
        st = report.status(a)
        if _STATUS_OF.get(p) is not st:
            bad.append((a, st, p))
    return CrossCheckReport(view, len(fw), bad,
                            sum(p is Provable.INDETERMINATE for p in provable), prover.engine)
