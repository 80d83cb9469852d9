import pytest
from hypothesis import given, settings, strategies as st

from akb import GeneratorParams, fixture_path, generate_random_system
from akb.kb import Literal, RuleId
from akb.parser import ParseError, load, parse_system, parse_text, print_system


def diagnostics(text, name="t.akb"):
    with pytest.raises(ParseError) as exc:
        parse_text(text, name)
    return exc.value.diagnostics


def test_dog():
    s = load(fixture_path("dog"))
    assert len(s.agents) == 1 and len(s.rules) == 1
    assert len(s.rules[0].head) == 2


def test_jail_shape():
    s = load(fixture_path("jail"))
    assert [(a.id, len(a.rules)) for a in s.agents] == [("Agt1", 4), ("Agt2", 3)]
    assert len(s.agent_prefs) == 0


def test_plan_preferences_parsed():
    s = load(fixture_path("plan"))
    assert list(s.agent("A").rule_prefs) == [(RuleId("A", "A3"), RuleId("A", "A5"))]
    assert list(s.agent_prefs) == [("A", "B")]


def test_facts_and_weak_premises():
    s = parse_text("agent A { f: => a. g: a, ~b, -c => d | -e. }")
    g = s.rule("A.g")
    assert g.strong == (Literal("a"), Literal("c", True))
    assert g.weak == (Literal("b"),)
    assert g.head == (Literal("d"), Literal("e", True))
    assert s.rule("A.f").strong == ()


def test_rule_named_prefer():
    s = parse_text("agent A { prefer: => a. q: => b. prefer prefer > q. }")
    assert s.agent("A").rule_prefs.prefers(RuleId("A", "prefer"), RuleId("A", "q"))


def test_comments_and_whitespace():
    s = parse_text("# c\nagent A {  # trailing\n r: => a.\n}\n")
    assert len(s.rules) == 1


def test_reflexive_preference():
    (d,) = diagnostics("agent A { r1: => a. prefer r1 > r1. }")
    assert "irreflexive" in d.message


def test_cyclic_agent_preference_lists_cycle():
    ds = diagnostics("agent A { r: => a. }\nagent B { r: => b. }\nprefer A > B.\nprefer B > A.\n")
    assert any("cycle" in d.message and "A > B > A" in d.message for d in ds)


def test_syntax_error_position():
    (d,) = diagnostics("agent A {\n  r1: a => .\n}\n")
    assert (d.document, d.line) == ("t.akb", 2)
    assert "empty head" in d.message
    assert str(d).startswith("t.akb:2:")


def test_errors_are_collected():
    ds = diagnostics("agent A {\n r1 => a.\n r2: => a | -a.\n r3: => b\n}\n")
    assert len(ds) >= 3
    assert [d.line for d in ds] == sorted(d.line for d in ds)


def test_unknown_references():
    ds = diagnostics("agent A { r: => a. prefer r > q. }\nprefer A > Z.\n")
    messages = " / ".join(d.message for d in ds)
    assert "q" in messages and "Z" in messages


def test_duplicate_rule_name():
    (d,) = diagnostics("agent A { r: => a. r: => b. }")
    assert "duplicate" in d.message


def test_duplicate_agent_across_documents():
    with pytest.raises(ParseError) as exc:
        parse_system([("one.akb", "agent A { r: => a. }"), ("two.akb", "agent A { q: => b. }")])
    (d,) = exc.value.diagnostics
    assert d.document == "two.akb" and "duplicate agent" in d.message


def test_documents_merge():
    s = parse_system([("one.akb", "agent A { r: => a. }"),
                      ("two.akb", "agent B { r: => -a. }\nprefer A > B.")])
    assert [a.id for a in s.agents] == ["A", "B"]
    assert s.agent_prefs.prefers("A", "B")


@pytest.mark.parametrize("name", ["dog", "legal", "jail", "plan"])
def test_fixture_round_trip(name):
    s = load(fixture_path(name))
    text = print_system(s)
    assert parse_text(text) == s
    assert print_system(parse_text(text)) == text


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 3), st.booleans())
def test_round_trip_random(seed, agents, disjunction):
    s = generate_random_system(seed, GeneratorParams(agents=agents, disjunction=disjunction,
                                                     subsumption=True, overlap=True))
    assert parse_text(print_system(s)) == s
