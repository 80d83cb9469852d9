"""Core domain types: literals, rules, agents, preference hierarchies and systems."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Generic, Hashable, Iterable, Iterator, TypeVar

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

K = TypeVar("K", bound=Hashable)


class ValidationError(ValueError):
    """Raised when a system violates a structural invariant."""


@dataclass(frozen=True, order=True)
class Literal:
    atom: str
    negated: bool = False

    def __post_init__(self):
        if not IDENT_RE.match(self.atom):
            raise ValidationError(f"invalid atom name {self.atom!r}")

    @classmethod
    def parse(cls, text: str) -> "Literal":
        text = text.strip()
        if text.startswith("-"):
            return cls(text[1:], True)
        return cls(text, False)

    def complement(self) -> "Literal":
        return Literal(self.atom, not self.negated)

    def __str__(self):
        return ("-" if self.negated else "") + self.atom


def complement(lit: Literal) -> Literal:
    return lit.complement()


@dataclass(frozen=True, order=True)
class RuleId:
    agent: str
    name: str

    def __str__(self):
        return f"{self.agent}.{self.name}"


@dataclass(frozen=True)
class Rule:
    """A named clause ``strong, ~weak => h1 | h2 | ...``.

    ``alias_of`` is set on synthetic auxiliary rules; preference lookups
    resolve through it.
    """

    id: RuleId
    strong: tuple[Literal, ...] = ()
    weak: tuple[Literal, ...] = ()
    head: tuple[Literal, ...] = ()
    alias_of: RuleId | None = None

    def __post_init__(self):
        if not self.head:
            raise ValidationError(f"rule {self.id} has an empty head")
        for part, lits in (("head", self.head), ("strong premises", self.strong),
                           ("weak premises", self.weak)):
            if len(set(lits)) != len(lits):
                raise ValidationError(f"rule {self.id}: duplicate literal in {part}")
        heads = set(self.head)
        for lit in self.head:
            if lit.complement() in heads:
                raise ValidationError(
                    f"rule {self.id}: head contains both {lit} and its complement")

    def __hash__(self):
        return hash((self.id, self.head))

    @property
    def agent(self) -> str:
        return self.id.agent

    @property
    def pref_id(self) -> RuleId:
        return self.alias_of if self.alias_of is not None else self.id

    @property
    def condition(self) -> tuple[frozenset[Literal], frozenset[Literal]]:
        return frozenset(self.strong), frozenset(self.weak)

    @property
    def synthetic(self) -> bool:
        return self.alias_of is not None

    def __str__(self):
        body = ", ".join([str(l) for l in self.strong] + [f"~{l}" for l in self.weak])
        head = " | ".join(str(l) for l in self.head)
        return f"{self.id.name}: {body + ' ' if body else ''}=> {head}."


def rule_parts(rule: Rule) -> tuple[frozenset[Literal], frozenset[Literal], frozenset[Literal]]:
    """Return ``(strong premises, weak premises, head)`` as sets."""
    return frozenset(rule.strong), frozenset(rule.weak), frozenset(rule.head)


class PreferenceHierarchy(Generic[K]):
    """A strict partial order given by raw ``(better, worse)`` pairs.

    Pairs are closed transitively at construction; reflexive pairs and
    cycles raise :class:`ValidationError`.
    """

    def __init__(self, pairs: Iterable[tuple[K, K]] = ()):
        self.pairs: tuple[tuple[K, K], ...] = tuple(dict.fromkeys(pairs))
        for x, y in self.pairs:
            if x == y:
                raise ValidationError(f"irreflexive preference violated: {x} > {x}")
        succ: dict[K, set[K]] = {}
        for x, y in self.pairs:
            succ.setdefault(x, set()).add(y)
        closure: dict[K, set[K]] = {}
        for x in succ:
            seen: set[K] = set()
            stack = list(succ[x])
            while stack:
                y = stack.pop()
                if y in seen:
                    continue
                seen.add(y)
                stack.extend(succ.get(y, ()))
            closure[x] = seen
        for x, worse in closure.items():
            if x in worse:
                raise ValidationError(f"preference cycle through {x}: {self._cycle(x, succ)}")
        self._closure = closure

    @staticmethod
    def _cycle(start, succ) -> str:
        # DFS for a path start -> ... -> start, used only for the diagnostic.
        path = [start]
        seen = set()

        def walk(node):
            for nxt in sorted(succ.get(node, ()), key=str):
                if nxt == start:
                    return True
                if nxt in seen:
                    continue
                seen.add(nxt)
                path.append(nxt)
                if walk(nxt):
                    return True
                path.pop()
            return False

        walk(start)
        return " > ".join(str(p) for p in path + [start])

    def prefers(self, x: K, y: K) -> bool:
        return y in self._closure.get(x, ())

    def keys(self) -> set[K]:
        return {k for pair in self.pairs for k in pair}

    def __iter__(self) -> Iterator[tuple[K, K]]:
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __eq__(self, other):
        if not isinstance(other, PreferenceHierarchy):
            return NotImplemented
        return set(self.pairs) == set(other.pairs)

    def __hash__(self):
        return hash(frozenset(self.pairs))

    def __repr__(self):
        return f"PreferenceHierarchy({list(self.pairs)!r})"


def prefers(h: PreferenceHierarchy, x, y) -> bool:
    return h.prefers(x, y)


@dataclass(frozen=True)
class Agent:
    id: str
    rules: tuple[Rule, ...] = ()
    rule_prefs: PreferenceHierarchy = field(default_factory=PreferenceHierarchy)

    def __post_init__(self):
        names = [r.id for r in self.rules]
        if len(set(names)) != len(names):
            raise ValidationError(f"agent {self.id}: duplicate rule name")
        for r in self.rules:
            if r.id.agent != self.id:
                raise ValidationError(f"rule {r.id} is not owned by agent {self.id}")
        known = set(names)
        for key in self.rule_prefs.keys():
            if key not in known:
                raise ValidationError(f"agent {self.id}: preference references unknown rule {key}")

    def rule(self, name: str) -> Rule:
        for r in self.rules:
            if r.id.name == name:
                return r
        raise KeyError(name)


@dataclass(frozen=True)
class ArgumentationSystem:
    agents: tuple[Agent, ...] = ()
    agent_prefs: PreferenceHierarchy = field(default_factory=PreferenceHierarchy)

    def __post_init__(self):
        ids = [a.id for a in self.agents]
        if len(set(ids)) != len(ids):
            raise ValidationError("duplicate agent identifier")
        for key in self.agent_prefs.keys():
            if key not in ids:
                raise ValidationError(f"preference references unknown agent {key}")
        object.__setattr__(self, "_rules", {r.id: r for a in self.agents for r in a.rules})
        object.__setattr__(self, "_agents", {a.id: a for a in self.agents})

    @property
    def rules(self) -> tuple[Rule, ...]:
        return tuple(r for a in self.agents for r in a.rules)

    def rule(self, rid: RuleId | str) -> Rule:
        if isinstance(rid, str):
            agent, _, name = rid.partition(".")
            rid = RuleId(agent, name)
        return self._rules[rid]

    def agent(self, agent_id: str) -> Agent:
        return self._agents[agent_id]

    def literals(self) -> list[Literal]:
        """Every literal mentioned anywhere, sorted."""
        seen = set()
        for r in self.rules:
            seen.update(r.strong, r.weak, r.head)
        return sorted(seen)

    def restrict(self, *agent_ids: str) -> "ArgumentationSystem":
        """The subsystem made of the named agents only."""
        keep = set(agent_ids)
        missing = keep - set(self._agents)
        if missing:
            raise KeyError(sorted(missing)[0])
        prefs = [(x, y) for x, y in self.agent_prefs if x in keep and y in keep]
        return ArgumentationSystem(tuple(a for a in self.agents if a.id in keep),
                                   PreferenceHierarchy(prefs))

    def rule_preferred(self, better: Rule, worse: Rule) -> bool:
        """Whether ``better`` outranks ``worse``: by the owning agent's rule
        order when both resolve to the same agent, by the agent order otherwise."""
        b, w = better.pref_id, worse.pref_id
        if b.agent == w.agent:
            agent = self._agents.get(b.agent)
            return agent is not None and agent.rule_prefs.prefers(b, w)
        return self.agent_prefs.prefers(b.agent, w.agent)
