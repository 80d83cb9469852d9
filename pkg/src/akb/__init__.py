"""Argumentation over multi-agent extended disjunctive logic programs."""

from __future__ import annotations

from pathlib import Path

from .arguments import (Argument, ArgumentSet, Bounds, BoundsExceeded, Step,
                        build_argument, canonical_key, enumerate_arguments,
                        validate_argument)
from .attacks import (AttackEdge, AttackKind, Framework, View, attack_graph,
                      auxiliary_arguments, auxiliary_rules, defeats,
                      generalized_reduction, rebuts, strictly_defeats, thins,
                      undercuts)
from .dialectics import (CrossCheckReport, NoRepeat, Outcome, ProofTree, Provable,
                         cross_check, prove, prove_literal, provable_status)
from .generate import GeneratorParams, generate_random_system
from .kb import (Agent, ArgumentationSystem, Literal, PreferenceHierarchy, Rule,
                 RuleId, ValidationError)
from .parser import ParseError, load, parse_system, parse_text, print_system
from .semantics import (LiteralStatus, Status, StatusReport, apply_pi, evaluate,
                        least_fixpoint)

__version__ = "0.1.0"

_FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> Path:
    """Path of a bundled example knowledge base (``"legal"`` or ``"legal.akb"``)."""
    if not name.endswith(".akb"):
        name += ".akb"
    path = _FIXTURES / name
    if not path.exists():
        raise FileNotFoundError(path)
    return path


def load_fixture(name: str) -> ArgumentationSystem:
    return load(fixture_path(name))
