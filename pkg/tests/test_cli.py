import io
import json
import re
from pathlib import Path

import pytest

from akb import fixture_path
from akb.cli import main, parse_args, run, UsageError

LEGAL, JAIL, PLAN, DOG = (fixture_path(n) for n in ("legal", "jail", "plan", "dog"))

NODE = re.compile(r'^  (arg|aux)\d+ \[label="(?:[^"\\]|\\.)*"(?:, [a-z]+=[a-z]+)*\];$')
EDGE = re.compile(r'^  (arg|aux)\d+ -> (arg|aux)\d+ \[label="(undercut|rebut|thinning|defeat)"\];$')


def call(*argv):
    out = io.StringIO()
    code = run(list(map(str, argv)), out)
    return code, out.getvalue()


def write(tmp_path, text, name="kb.akb"):
    p = tmp_path / name
    p.write_text(text)
    return p


def assert_dot(text):
    lines = text.splitlines()
    assert lines[0] == "digraph attacks {" and lines[-1] == "}"
    for line in lines[1:-1]:
        assert (line in ("  rankdir=BT;", '  node [shape=box, fontname="monospace"];')
                or NODE.match(line) or EDGE.match(line)), line


class TestExitCodes:
    def test_ok(self):
        assert call("check", LEGAL)[0] == 0

    def test_parse_error(self, tmp_path, capsys):
        p = write(tmp_path, "agent A {\n  r1: a => .\n}\n")
        assert call("check", p)[0] == 2
        assert f"{p}:2:" in capsys.readouterr().err

    def test_cyclic_preference_lists_cycle(self, tmp_path, capsys):
        p = write(tmp_path, "agent A { r1: => a. r2: => b. prefer r1 > r2. prefer r2 > r1. }\n")
        assert call("check", p)[0] == 2
        assert "cycle" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert call("check", tmp_path / "nope.akb")[0] == 2

    def test_unknown_subcommand_and_flag(self, capsys):
        assert call("frobnicate", LEGAL)[0] == 2
        assert call("status", LEGAL, "--bogus")[0] == 2
        assert "usage" in capsys.readouterr().err

    def test_usage_errors(self):
        assert call("status", LEGAL, "--format", "dot")[0] == 2
        assert call("graph", LEGAL, "--format", "text")[0] == 2
        assert call("prove", LEGAL)[0] == 2
        assert call("prove", LEGAL, "--literal", "a", "--argument", "arg1")[0] == 2
        assert call("status", LEGAL, "--assert", "justified")[0] == 2
        assert call("status", LEGAL, "--literal", "1bad")[0] == 2
        assert call("arguments", LEGAL, "--max-args", "0")[0] == 2
        assert call("prove", LEGAL, "--argument", "arg999")[0] == 2

    def test_bounds_exceeded(self, capsys):
        assert call("status", PLAN, "--max-args", "10")[0] == 3
        assert "max_args" in capsys.readouterr().err
        assert call("arguments", LEGAL, "--max-steps", "2")[0] == 3

    def test_assert(self):
        assert call("status", LEGAL, "--literal", "put_into_jail", "--assert", "justified")[0] == 0
        assert call("status", LEGAL, "--literal", "put_into_jail", "--assert", "overruled")[0] == 4
        assert call("prove", LEGAL, "--literal", "put_into_jail", "--assert", "justified")[0] == 0
        assert call("prove", LEGAL, "--literal=-murderer", "--assert", "justified")[0] == 4
        assert call("prove", LEGAL, "--literal=-murderer", "--assert", "overruled")[0] == 0
        assert call("prove", LEGAL, "--argument", "arg3", "--assert", "defeated")[0] == 0

    def test_depth_exceeded(self, capsys):
        # arg18 needs a three-level tree
        code, out = call("prove", LEGAL, "--argument", "arg18", "--depth", "2")
        assert code == 5 and "outcome: depth-exceeded" in out
        assert "depth limit 2" in capsys.readouterr().err

    def test_help(self, capsys):
        assert call("--help")[0] == 0
        assert "check" in capsys.readouterr().out

    def test_main_exits(self, monkeypatch):
        monkeypatch.setattr("sys.argv", ["akb", "check", str(DOG)])
        with pytest.raises(SystemExit) as exc:
            main()
        assert exc.value.code == 0


class TestStatus:
    def test_plan_credulous(self):
        assert call("status", PLAN, "--view", "credulous", "--literal", "new_production_line") \
            == (0, "justified\n")

    def test_legal_table(self):
        code, out = call("status", LEGAL)
        header, *rows = out.split("\n\n")[0].splitlines()
        assert header.split() == ["id", "rules", "conclusions", "status"]
        assert len(rows) == 28
        assert rows[3].split()[0] == "arg3" and rows[3].split()[-1] == "defeated"

    def test_literal_with_leading_dash(self):
        assert call("status", LEGAL, "--literal=-murderer") == (0, "overruled\n")

    def test_json(self):
        data = json.loads(call("status", JAIL, "--view", "skeptical", "--format", "json")[1])
        assert data["view"] == "skeptical"
        assert data["iterations"] == len(data["trace"]) >= 1
        assert data["literals"]["release"] == "justified"
        assert data["literals"]["put_into_jail"] == "overruled"
        assert "owner" not in data["literals"] or data["literals"]["owner"] == "unknown"
        assert any(a["synthetic"] for a in data["arguments"])

    def test_multiple_files_merge(self, tmp_path):
        a = write(tmp_path, "agent A { r: => p. }\n", "a.akb")
        b = write(tmp_path, "agent B { q: p => x. }\n", "b.akb")
        assert call("status", a, b, "--literal", "x") == (0, "justified\n")
        assert call("check", a, a)[0] == 2


class TestOtherCommands:
    def test_check(self):
        code, out = call("check", PLAN)
        assert code == 0 and "2 agent(s)" in out
        data = json.loads(call("check", PLAN, "--format", "json")[1])
        assert [a["id"] for a in data["agents"]] == ["A", "B"]

    def test_arguments(self):
        code, out = call("arguments", LEGAL)
        assert code == 0 and len(out.splitlines()) == 28
        data = json.loads(call("arguments", LEGAL, "--format", "json")[1])
        assert len(data["arguments"]) == 28

    def test_attacks(self):
        code, out = call("attacks", LEGAL)
        assert code == 0
        assert "arg4 undercut arg3" in out
        data = json.loads(call("attacks", JAIL, "--view", "skeptical", "--format", "json")[1])
        kinds = {e["kind"] for e in data["attacks"]}
        assert kinds == {"undercut", "thinning"}  # no complementary literals in jail

    def test_prove_text(self):
        code, out = call("prove", LEGAL, "--argument", "arg18")
        lines = out.splitlines()
        assert code == 0 and lines[0].startswith("P: arg18 ")
        assert "  O: arg3 [Legal.r8=-murderer] |- {-murderer}  (rebut)" in lines
        assert "    P: arg4 [Legal.r9=criminal_record] |- {criminal_record}  (undercut)" in lines
        assert lines[-1] == "outcome: proponent-wins"

    def test_prove_json(self):
        data = json.loads(call("prove", LEGAL, "--literal", "put_into_jail", "--format", "json")[1])
        assert data["outcome"] == "proponent-wins"
        root = data["root"]
        assert root["player"] == "P" and root["move"] == 1 and root["attack"] is None
        ids = []

        def walk(m):
            ids.append(m["move"])
            for c in m["children"]:
                walk(c)
        walk(root)
        assert ids == sorted(ids) == list(range(1, len(ids) + 1))

    def test_prove_unknown_literal(self):
        code, out = call("prove", LEGAL, "--literal", "nothing", "--assert", "unknown")
        assert code == 0 and "no argument concludes nothing" in out

    def test_graph_dot(self):
        code, out = call("graph", JAIL, "--view", "skeptical")
        assert code == 0
        assert_dot(out)
        assert 'label="thinning"' in out
        assert re.search(r"aux\d+ \[label=.*shape=ellipse", out)

    def test_graph_dot_all_fixtures(self):
        for path in (LEGAL, JAIL, DOG):
            for view in ("credulous", "skeptical", "generalized"):
                assert_dot(call("graph", path, "--view", view)[1])

    def test_graph_json(self):
        data = json.loads(call("graph", LEGAL, "--format", "json")[1])
        assert len(data["nodes"]) == 28 and data["edges"]

    def test_label_escaping(self):
        from akb.render import _dot_escape
        assert _dot_escape('a"b\\c') == 'a\\"b\\\\c'


class TestDeterminism:
    @pytest.mark.parametrize("argv", [
        ("status", LEGAL, "--format", "json"),
        ("attacks", JAIL, "--view", "generalized"),
        ("graph", JAIL, "--view", "skeptical"),
        ("prove", LEGAL, "--literal", "put_into_jail", "--format", "json"),
    ])
    def test_repeatable(self, argv):
        assert call(*argv) == call(*argv)


def test_parse_args_defaults():
    cfg = parse_args(["graph", str(LEGAL)])
    assert cfg.fmt == "dot" and cfg.view.value == "credulous"
    with pytest.raises(UsageError):
        parse_args(["arguments", str(LEGAL), "--format", "dot"])


@pytest.fixture(scope="module")
def validate():
    """Check a payload against one definition of docs/output.schema.json."""
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads((Path(__file__).parents[1] / "docs" / "output.schema.json").read_text())
    jsonschema.Draft202012Validator.check_schema(schema)

    def check(definition, payload):
        sub = {"$ref": f"#/$defs/{definition}", "$defs": schema["$defs"]}
        jsonschema.Draft202012Validator(sub).validate(payload)
    return check


class TestJsonSchema:
    @pytest.mark.parametrize("definition, argv", [
        ("check", ("check", PLAN)),
        ("arguments", ("arguments", JAIL, "--view", "generalized")),
        ("attacks", ("attacks", JAIL, "--view", "skeptical")),
        ("status", ("status", JAIL, "--view", "skeptical")),
        ("status", ("status", DOG)),
        ("statusLiteral", ("status", LEGAL, "--literal=-murderer")),
        ("proof", ("prove", LEGAL, "--literal", "put_into_jail")),
        ("proof", ("prove", JAIL, "--view", "skeptical", "--literal", "put_into_jail")),
        ("proof", ("prove", LEGAL, "--argument", "arg18", "--depth", "2")),
        ("graph", ("graph", JAIL, "--view", "skeptical")),
    ])
    def test_payload(self, validate, definition, argv):
        code, out = call(*argv, "--format", "json")
        assert code in (0, 3, 4, 5)
        validate(definition, json.loads(out))

    def test_rejects_unknown_kind(self, validate):
        import jsonschema
        bad = {"view": "credulous", "nodes": [], "edges": [
            {"attacker": "arg1", "target": "arg2", "kind": "support"}]}
        with pytest.raises(jsonschema.ValidationError):
            validate("graph", bad)
