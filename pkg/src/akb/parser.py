"""Reader and printer for the ``.akb`` knowledge-base format.

Grammar::

    system     := (agentDecl | globalPref)*
    agentDecl  := "agent" IDENT "{" (rule | rulePref)* "}"
    rule       := IDENT ":" [body] "=>" head "."
    body       := premise ("," premise)*
    premise    := ["~"] literal
    literal    := ["-"] IDENT
    head       := literal ("|" literal)*
    rulePref   := "prefer" IDENT ">" IDENT "."
    globalPref := "prefer" IDENT ">" IDENT "."

``#`` starts a comment running to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, NamedTuple

from .kb import (Agent, ArgumentationSystem, Literal, PreferenceHierarchy, Rule,
                 RuleId, ValidationError)

__all__ = ["Diagnostic", "ParseError", "parse_system", "parse_text", "load",
           "print_system"]


@dataclass(frozen=True)
class Diagnostic:
    document: str
    line: int
    column: int
    message: str

    def __str__(self):
        return f"{self.document}:{self.line}:{self.column}: {self.message}"


class ParseError(Exception):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("\n".join(str(d) for d in diagnostics))


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<arrow>=>)
  | (?P<punct>[{}:,~\-|.>])
""", re.VERBOSE)


def _tokenize(text: str, doc: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError([Diagnostic(doc, line, pos - line_start + 1,
                                         f"unexpected character {text[pos]!r}")])
        kind = m.lastgroup
        if kind == "ident":
            tokens.append(Token("ident", m.group(), line, pos - line_start + 1))
        elif kind in ("arrow", "punct"):
            tokens.append(Token(m.group(), m.group(), line, pos - line_start + 1))
        chunk = m.group()
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Syntax(Exception):
    def __init__(self, tok: Token, message: str):
        self.tok = tok
        self.message = message


@dataclass
class _RawAgent:
    name: Token
    rules: list[tuple[Token, Rule]]
    prefs: list[tuple[Token, Token]]


class _Parser:
    def __init__(self, text: str, doc: str):
        self.doc = doc
        self.toks = _tokenize(text, doc)
        self.i = 0
        self.diags: list[Diagnostic] = []
        self.agents: list[_RawAgent] = []
        self.global_prefs: list[tuple[Token, Token]] = []

    def peek(self, ahead: int = 0) -> Token:
        return self.toks[min(self.i + ahead, len(self.toks) - 1)]

    def take(self, kind: str, what: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            shown = tok.text or "end of input"
            raise _Syntax(tok, f"expected {what or kind!r}, found {shown!r}")
        self.i += 1
        return tok

    def error(self, tok: Token, message: str):
        self.diags.append(Diagnostic(self.doc, tok.line, tok.col, message))

    def recover(self, stops=(".", "}")):
        while self.peek().kind not in stops + ("eof",):
            self.i += 1
        if self.peek().kind == ".":
            self.i += 1

    def parse(self):
        while self.peek().kind != "eof":
            tok = self.peek()
            try:
                if tok.kind == "ident" and tok.text == "agent" and self.peek(1).kind == "ident":
                    self.agent()
                elif tok.kind == "ident" and tok.text == "prefer":
                    self.global_prefs.append(self.pref())
                else:
                    raise _Syntax(tok, f"expected 'agent' or 'prefer', found {tok.text or 'end of input'!r}")
            except _Syntax as exc:
                self.error(exc.tok, exc.message)
                self.recover()
                if self.peek().kind == "}":
                    self.i += 1

    def agent(self):
        self.take("ident")
        raw = _RawAgent(self.take("ident", "agent name"), [], [])
        self.take("{")
        while self.peek().kind not in ("}", "eof"):
            try:
                if self.peek().text == "prefer" and self.peek(1).kind != ":":
                    raw.prefs.append(self.pref())
                else:
                    parsed = self.rule(raw.name.text)
                    if parsed is not None:
                        raw.rules.append(parsed)
            except _Syntax as exc:
                self.error(exc.tok, exc.message)
                self.recover()
        self.take("}", "}")
        self.agents.append(raw)

    def pref(self) -> tuple[Token, Token]:
        self.take("ident")
        better = self.take("ident", "identifier")
        self.take(">", ">")
        worse = self.take("ident", "identifier")
        self.take(".", ".")
        return better, worse

    def literal(self) -> Literal:
        negated = False
        if self.peek().kind == "-":
            self.i += 1
            negated = True
        return Literal(self.take("ident", "literal").text, negated)

    def rule(self, agent: str) -> tuple[Token, Rule] | None:
        name = self.take("ident", "rule name")
        self.take(":", ":")
        strong: list[Literal] = []
        weak: list[Literal] = []
        if self.peek().kind != "=>":
            while True:
                if self.peek().kind == "~":
                    self.i += 1
                    weak.append(self.literal())
                else:
                    strong.append(self.literal())
                if self.peek().kind != ",":
                    break
                self.i += 1
        self.take("=>", "=>")
        if self.peek().kind == ".":
            raise _Syntax(self.peek(), f"rule {name.text}: empty head")
        head = [self.literal()]
        while self.peek().kind == "|":
            self.i += 1
            head.append(self.literal())
        self.take(".", ".")
        try:
            rule = Rule(RuleId(agent, name.text), tuple(strong), tuple(weak), tuple(head))
        except ValidationError as exc:
            # the rule is fully consumed, so no token recovery is needed
            self.error(name, str(exc))
            return None
        return name, rule


def parse_system(documents: Iterable[tuple[str, str]]) -> ArgumentationSystem:
    """Parse ``(name, text)`` documents into one validated system.

    Raises :class:`ParseError` carrying every diagnostic found.
    """
    diags: list[Diagnostic] = []
    raw_agents: list[tuple[str, _RawAgent]] = []
    raw_global: list[tuple[str, Token, Token]] = []
    for doc, text in documents:
        try:
            p = _Parser(text, doc)
            p.parse()
        except _Syntax as exc:
            diags.append(Diagnostic(doc, exc.tok.line, exc.tok.col, exc.message))
            continue
        except ParseError as exc:
            diags.extend(exc.diagnostics)
            continue
        diags.extend(p.diags)
        raw_agents.extend((doc, a) for a in p.agents)
        raw_global.extend((doc, b, w) for b, w in p.global_prefs)

    agents: list[Agent] = []
    seen_agents: dict[str, str] = {}
    for doc, raw in raw_agents:
        if raw.name.text in seen_agents:
            diags.append(Diagnostic(doc, raw.name.line, raw.name.col,
                                    f"duplicate agent {raw.name.text!r} "
                                    f"(first declared in {seen_agents[raw.name.text]})"))
            continue
        seen_agents[raw.name.text] = doc
        rules: list[Rule] = []
        names: set[str] = set()
        for tok, rule in raw.rules:
            if tok.text in names:
                diags.append(Diagnostic(doc, tok.line, tok.col,
                                        f"duplicate rule name {tok.text!r} in agent {raw.name.text}"))
                continue
            names.add(tok.text)
            rules.append(rule)
        pairs = []
        for better, worse in raw.prefs:
            ok = True
            for tok in (better, worse):
                if tok.text not in names:
                    diags.append(Diagnostic(doc, tok.line, tok.col,
                                            f"preference references unknown rule {tok.text!r} "
                                            f"in agent {raw.name.text}"))
                    ok = False
            if ok and better.text == worse.text:
                diags.append(Diagnostic(doc, better.line, better.col,
                                        f"irreflexive preference violated: {better.text} > {better.text}"))
                ok = False
            if ok:
                pairs.append((RuleId(raw.name.text, better.text), RuleId(raw.name.text, worse.text)))
        try:
            prefs = PreferenceHierarchy(pairs)
        except ValidationError as exc:
            diags.append(Diagnostic(doc, raw.name.line, raw.name.col, str(exc)))
            prefs = PreferenceHierarchy()
        agents.append(Agent(raw.name.text, tuple(rules), prefs))

    gpairs = []
    for doc, better, worse in raw_global:
        ok = True
        for tok in (better, worse):
            if tok.text not in seen_agents:
                diags.append(Diagnostic(doc, tok.line, tok.col,
                                        f"preference references unknown agent {tok.text!r}"))
                ok = False
        if ok and better.text == worse.text:
            diags.append(Diagnostic(doc, better.line, better.col,
                                    f"irreflexive preference violated: {better.text} > {better.text}"))
            ok = False
        if ok:
            gpairs.append((better.text, worse.text))
    try:
        gprefs = PreferenceHierarchy(gpairs)
    except ValidationError as exc:
        doc, tok, _ = raw_global[0]
        diags.append(Diagnostic(doc, tok.line, tok.col, str(exc)))
        gprefs = PreferenceHierarchy()

    if diags:
        raise ParseError(diags)
    return ArgumentationSystem(tuple(agents), gprefs)


def parse_text(text: str, name: str = "<string>") -> ArgumentationSystem:
    return parse_system([(name, text)])


def load(*paths: str | Path) -> ArgumentationSystem:
    return parse_system([(str(p), Path(p).read_text(encoding="utf-8")) for p in paths])


def print_system(system: ArgumentationSystem) -> str:
    """Serialize deterministically in declaration order."""
    out = []
    for agent in system.agents:
        out.append(f"agent {agent.id} {{")
        for rule in agent.rules:
            out.append(f"  {rule}")
        for better, worse in agent.rule_prefs:
            out.append(f"  prefer {better.name} > {worse.name}.")
        out.append("}")
    for better, worse in system.agent_prefs:
        out.append(f"prefer {better} > {worse}.")
    return "\n".join(out) + "\n"
