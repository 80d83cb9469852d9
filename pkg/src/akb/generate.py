"""Seeded random argumentation systems for property tests."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .kb import Agent, ArgumentationSystem, Literal, PreferenceHierarchy, Rule, RuleId

__all__ = ["GeneratorParams", "generate_random_system", "has_thinning_pair"]


@dataclass(frozen=True)
class GeneratorParams:
    atoms: int = 6
    agents: int = 2
    rules_per_agent: int = 4
    max_head: int = 2
    max_premises: int = 2
    negation_prob: float = 0.3   # chance a literal is strongly negated
    weak_prob: float = 0.4       # chance a premise is a weak one
    pref_density: float = 0.3    # chance each ordered pair of a total order is kept
    disjunction: bool = True
    subsumption: bool = False    # copy a condition into another agent with a wider head
    overlap: bool = False        # same, with intersecting but incomparable heads

    def __post_init__(self):
        if not 1 <= self.atoms <= 26:
            raise ValueError("atoms must be between 1 and 26")
        if self.agents < 1 or self.rules_per_agent < 1:
            raise ValueError("need at least one agent and one rule per agent")
        if self.max_head < 1 or self.max_premises < 0:
            raise ValueError("max_head must be >= 1 and max_premises >= 0")


def _literal(rng: random.Random, atoms: list[str], p_neg: float) -> Literal:
    return Literal(rng.choice(atoms), rng.random() < p_neg)


def _head(rng: random.Random, atoms: list[str], width: int, p_neg: float) -> tuple[Literal, ...]:
    # distinct atoms, so the head never holds a literal and its complement
    return tuple(Literal(a, rng.random() < p_neg) for a in rng.sample(atoms, width))


def _body(rng: random.Random, atoms: list[str], params: GeneratorParams):
    strong: list[Literal] = []
    weak: list[Literal] = []
    for _ in range(rng.randint(0, params.max_premises)):
        lit = _literal(rng, atoms, params.negation_prob)
        part = weak if rng.random() < params.weak_prob else strong
        if lit not in part:
            part.append(lit)
    return tuple(strong), tuple(weak)


def _order(rng: random.Random, keys: list, density: float) -> PreferenceHierarchy:
    # pairs drawn from a random total order are always acyclic
    keys = list(keys)
    rng.shuffle(keys)
    pairs = [(keys[i], keys[j]) for i in range(len(keys)) for j in range(i + 1, len(keys))
             if rng.random() < density]
    return PreferenceHierarchy(pairs)


def generate_random_system(seed: int, params: GeneratorParams = GeneratorParams()) -> ArgumentationSystem:
    """A valid system drawn deterministically from ``seed``."""
    rng = random.Random(seed)
    atoms = [chr(ord("a") + i) for i in range(params.atoms)]
    width = min(params.max_head if params.disjunction else 1, len(atoms))
    names = [chr(ord("A") + i) for i in range(params.agents)]
    rules: dict[str, list[Rule]] = {n: [] for n in names}
    for agent in names:
        for i in range(params.rules_per_agent):
            strong, weak = _body(rng, atoms, params)
            head = _head(rng, atoms, rng.randint(1, width), params.negation_prob)
            rules[agent].append(Rule(RuleId(agent, f"r{i}"), strong, weak, head))

    if params.agents >= 2 and params.disjunction and (params.subsumption or params.overlap):
        src_agent, dst_agent = rng.sample(names, 2)
        src = rng.choice(rules[src_agent])
        unused = [a for a in atoms if a not in {l.atom for l in src.head}]
        n = len(rules[dst_agent])
        if params.subsumption and unused:
            extra = Literal(rng.choice(unused), rng.random() < params.negation_prob)
            rules[dst_agent].append(Rule(RuleId(dst_agent, f"r{n}"), src.strong, src.weak,
                                         src.head + (extra,)))
            n += 1
        if params.overlap and unused and len(src.head) >= 2:
            keep = src.head[:-1]
            extra = Literal(rng.choice(unused), rng.random() < params.negation_prob)
            rules[dst_agent].append(Rule(RuleId(dst_agent, f"r{n}"), src.strong, src.weak,
                                         keep + (extra,)))

    agents = tuple(Agent(n, tuple(rules[n]),
                         _order(rng, [r.id for r in rules[n]], params.pref_density))
                   for n in names)
    return ArgumentationSystem(agents, _order(rng, names, params.pref_density))


def has_thinning_pair(system: ArgumentationSystem) -> bool:
    from .attacks import thins
    rules = system.rules
    return any(thins(a, b) for a in rules for b in rules)
