"""Acceptance criteria, one test each.

A terminal-summary hook in ``conftest.py`` prints one PASS/FAIL line per
criterion.  Run alone with ``pytest tests/test_acceptance.py`` or
``python tests/test_acceptance.py``.
"""

import os
import random
import subprocess
import sys
from concurrent.futures import ThreadPoolExecutor

import pytest

from akb import GeneratorParams, fixture_path, generate_random_system, load_fixture
from akb.attacks import Framework, View, auxiliary_rules
from akb.dialectics import cross_check
from akb.kb import Literal
from akb.semantics import LiteralStatus, Status, apply_pi, evaluate
from named_args import PLAN_ARG1, PLAN_ARG3, PLAN_ARG4, arg

J, O, A = LiteralStatus.JUSTIFIED, LiteralStatus.OVERRULED, LiteralStatus.ARGUABLE

CRITERIA = {
    1: "legal, credulous: put_into_jail justified, -murderer overruled, criminal_record justified",
    2: "jail, credulous: put_into_jail justified, release overruled",
    3: "jail, skeptical: put_into_jail overruled, release justified",
    4: "jail: auxiliary(r5, r2) is exactly {finger_print -> owner}",
    5: "plan per agent: Arg1 justified in A; Arg3 justified and Arg4 defeated in B",
    6: "plan combined: new_production_line justified (credulous), overruled (skeptical); A1^1",
    7: "monotonicity of Pi on 1000 random systems",
    8: "cross_check: zero disagreements on fixtures and 500 random systems per view",
    9: "collapse: skeptical equals credulous on single-agent and disjunction-free systems",
    10: "determinism: every CLI command byte-identical across runs",
}


def criterion(n):
    return pytest.mark.criterion(n, CRITERIA[n])


def literal_statuses(system, view, *lits):
    report = evaluate(system, view)
    return tuple(report.literal(l) for l in lits)


@criterion(1)
def test_criterion_01_legal_credulous():
    legal = load_fixture("legal")
    assert literal_statuses(legal, View.CREDULOUS, "put_into_jail", "-murderer",
                            "criminal_record") == (J, O, J)


@criterion(2)
def test_criterion_02_jail_credulous():
    assert literal_statuses(load_fixture("jail"), View.CREDULOUS,
                            "put_into_jail", "release") == (J, O)


@criterion(3)
def test_criterion_03_jail_skeptical():
    assert literal_statuses(load_fixture("jail"), View.SKEPTICAL,
                            "put_into_jail", "release") == (O, J)


@criterion(4)
def test_criterion_04_jail_auxiliary_rule():
    jail = load_fixture("jail")
    aux = auxiliary_rules(jail.rule("Agt2.r5"), jail.rule("Agt1.r2"))
    assert [(r.strong, r.weak, r.head) for r in aux] == \
        [((Literal("finger_print"),), (), (Literal("owner"),))]
    assert aux[0].pref_id == jail.rule("Agt2.r5").id


@criterion(5)
def test_criterion_05_plan_per_agent():
    plan = load_fixture("plan")
    kb_a, kb_b = plan.restrict("A"), plan.restrict("B")
    for view in View:
        ra, rb = evaluate(kb_a, view), evaluate(kb_b, view)
        assert ra.status(arg(kb_a, *PLAN_ARG1)) is Status.JUSTIFIED
        assert rb.status(arg(kb_b, *PLAN_ARG3)) is Status.JUSTIFIED
        assert rb.status(arg(kb_b, *PLAN_ARG4)) is Status.DEFEATED


@criterion(6)
def test_criterion_06_plan_combined():
    """Expected to fail on the skeptical half.

    Arg1 itself is defeated skeptically (the auxiliary argument built from
    B1 strictly defeats it and is justified), but the single-rule argument
    [B3] also concludes new_production_line.  Its weak premises -stable_market
    and adversary_financial_factor are only derivable by A5 and B5, which
    [A3] and [B7, B8] strictly defeat, so [B3] stays justified in every view.
    """
    plan = load_fixture("plan")
    (aux,) = auxiliary_rules(plan.rule("B.B1"), plan.rule("A.A1"))
    assert set(aux.strong) == {Literal("economic_grow")}
    assert set(aux.weak) == {Literal("adversary_financial_factor")}
    assert aux.head == (Literal("competition_grow"),)

    credulous = evaluate(plan, View.CREDULOUS)
    skeptical = evaluate(plan, View.SKEPTICAL)
    assert credulous.literal("new_production_line") is J
    assert skeptical.status(arg(plan, *PLAN_ARG1)) is Status.DEFEATED
    assert skeptical.literal("new_production_line") is O


def _random_params(rng):
    agents = rng.randint(1, 2)
    return GeneratorParams(atoms=rng.randint(3, 8), agents=agents,
                           rules_per_agent=rng.randint(2, 4), max_head=rng.randint(1, 3),
                           subsumption=rng.random() < 0.5, overlap=rng.random() < 0.5)


@criterion(7)
def test_criterion_07_monotonicity():
    rng = random.Random(7)
    violations = 0
    for seed in range(1000):
        system = generate_random_system(seed, _random_params(rng))
        assert len(system.rules) <= 10
        view = rng.choice(list(View))
        S = list(Framework(system, view).arguments)
        B = {a for a in S if rng.random() < 0.6}
        A_ = {a for a in B if rng.random() < 0.5}
        if not apply_pi(S, A_, system, view) <= apply_pi(S, B, system, view):
            violations += 1
    assert violations == 0


@criterion(8)
def test_criterion_08_soundness_completeness():
    bad = []
    for name in ("legal", "jail", "plan"):
        system = load_fixture(name)
        for view in View:
            report = cross_check(system, view)
            if not report.ok or report.indeterminate:
                bad.append((name, view, report.disagreements[:3]))
    rng = random.Random(8)
    for view in View:
        for seed in range(500):
            system = generate_random_system(10_000 + seed, _random_params(rng))
            report = cross_check(system, view)
            if not report.ok or report.indeterminate:
                bad.append((seed, view, report.disagreements[:3]))
    assert bad == []


def _same(system):
    c, s = evaluate(system, View.CREDULOUS), evaluate(system, View.SKEPTICAL)
    return (c.per_argument == s.per_argument and c.per_literal == s.per_literal
            and c.framework.arguments == s.framework.arguments)


@criterion(9)
def test_criterion_09_collapse():
    rng = random.Random(9)
    failures = []
    for seed in range(200):
        p = GeneratorParams(atoms=rng.randint(3, 8), agents=1, rules_per_agent=rng.randint(2, 8),
                            max_head=rng.randint(1, 3))
        if not _same(generate_random_system(seed, p)):
            failures.append(("single-agent", seed))
    for seed in range(200):
        p = GeneratorParams(atoms=rng.randint(3, 8), agents=rng.randint(2, 3),
                            rules_per_agent=rng.randint(2, 4), disjunction=False)
        if not _same(generate_random_system(seed, p)):
            failures.append(("disjunction-free", seed))
    assert failures == []


FIXTURE_LITERALS = {"legal": "put_into_jail", "jail": "release", "plan": "new_production_line",
                    "dog": "stranger"}


def _cli_invocations():
    for name, lit in FIXTURE_LITERALS.items():
        path = str(fixture_path(name))
        yield ["check", path]
        yield ["check", path, "--format", "json"]
        for view in ("credulous", "skeptical", "generalized"):
            yield ["status", path, "--view", view, "--format", "json"]
            yield ["prove", path, "--view", view, f"--literal={lit}"]
        yield ["status", path]
        yield ["prove", path, f"--literal={lit}", "--format", "json"]
        if name != "plan":  # plan's edge listing is millions of lines
            for view in ("credulous", "skeptical"):
                yield ["arguments", path, "--view", view]
                yield ["attacks", path, "--view", view]
                yield ["graph", path, "--view", view]
                yield ["graph", path, "--view", view, "--format", "json"]
        else:
            yield ["arguments", path]
            yield ["arguments", path, "--format", "json"]


def _run_cli(argv, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    done = subprocess.run([sys.executable, "-m", "akb.cli", *argv], capture_output=True, env=env)
    return done.returncode, done.stdout, done.stderr


@criterion(10)
def test_criterion_10_determinism():
    invocations = list(_cli_invocations())
    with ThreadPoolExecutor(max_workers=os.cpu_count() or 2) as pool:
        first = list(pool.map(lambda a: _run_cli(a, 1), invocations))
        second = list(pool.map(lambda a: _run_cli(a, 2), invocations))
    differing = [a for a, x, y in zip(invocations, first, second) if x != y]
    failed = [(a, x[0]) for a, x in zip(invocations, first) if x[0] != 0]
    assert failed == [] and differing == []


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
