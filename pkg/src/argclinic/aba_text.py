"""Textual framework format: one statement per line, Prolog-ish syntax.

    # comment
    assumption(a).
    contrary(a, c_a).
    rule(head, [b1, b2]).
    rule(fact, []).
    prefer(a, b).      # a is at most as preferred as b
    goal(g).
    priority(g1, g2).  # g1 is at most as important as g2

Symbols match [A-Za-z0-9_.¬-]+ and are case-sensitive.  Whitespace is free
within a line; '#' starts a comment.  Parse errors carry line and column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .aba_core import AbaFramework, RawFramework
from .aba_goals import AbapgFramework
from .errors import ParseError

SYMBOL_RE = re.compile(r"[A-Za-z0-9_.¬-]+")

_PUNCTUATION = set("()[],.")

STATEMENT_KEYWORDS = (
    "assumption",
    "contrary",
    "rule",
    "prefer",
    "goal",
    "priority",
)


@dataclass(frozen=True)
class ParsedProgram:
    """A parsed file: framework statements plus any goal statements."""

    raw: RawFramework
    goals: tuple[str, ...] = ()
    priorities: tuple[tuple[str, str], ...] = ()

    @property
    def has_goals(self) -> bool:
        return bool(self.goals) or bool(self.priorities)


@dataclass(frozen=True)
class _Token:
    text: str
    column: int


def _tokenize_line(line: str, line_no: int) -> list[_Token]:
    tokens = []
    i = 0
    while i < len(line):
        ch = line[i]
        if ch in " \t":
            i += 1
            continue
        if ch == "#":
            break
        if ch in _PUNCTUATION:
            tokens.append(_Token(ch, i + 1))
            i += 1
            continue
        match = SYMBOL_RE.match(line, i)
        if match:
            tokens.append(_Token(match.group(), i + 1))
            i = match.end()
            continue
        raise ParseError(
            f"unexpected character {ch!r}",
            line_no,
            i + 1,
            expected="a symbol, punctuation, or '#'",
        )
    return tokens


class _LineParser:
    def __init__(self, tokens: list[_Token], line_no: int, line_length: int):
        self.tokens = tokens
        self.line_no = line_no
        self.line_length = line_length
        self.pos = 0

    def _fail(self, expected: str) -> ParseError:
        if self.pos < len(self.tokens):
            token = self.tokens[self.pos]
            return ParseError(
                f"expected {expected}, found {token.text!r}",
                self.line_no,
                token.column,
                expected=expected,
            )
        return ParseError(
            f"expected {expected}, found end of line",
            self.line_no,
            self.line_length + 1,
            expected=expected,
        )

    def peek(self) -> _Token | None:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def expect(self, text: str) -> _Token:
        token = self.peek()
        if token is None or token.text != text:
            raise self._fail(f"{text!r}")
        self.pos += 1
        return token

    def symbol(self) -> str:
        token = self.peek()
        if token is None or not SYMBOL_RE.fullmatch(token.text):
            raise self._fail("a symbol")
        self.pos += 1
        return token.text

    def keyword(self) -> str:
        token = self.peek()
        if token is None or token.text not in STATEMENT_KEYWORDS:
            raise self._fail("a statement keyword " + "/".join(STATEMENT_KEYWORDS))
        self.pos += 1
        return token.text

    def end(self) -> None:
        if self.pos != len(self.tokens):
            raise self._fail("end of line")


def parse_aba_text(text: str) -> ParsedProgram:
    """Parse a textual framework into raw statements (unvalidated)."""
    rules: list[tuple[str, tuple[str, ...]]] = []
    assumptions: list[str] = []
    contraries: list[tuple[str, str]] = []
    preferences: list[tuple[str, str]] = []
    goals: list[str] = []
    priorities: list[tuple[str, str]] = []

    for line_no, line in enumerate(text.splitlines(), start=1):
        tokens = _tokenize_line(line, line_no)
        if not tokens:
            continue
        parser = _LineParser(tokens, line_no, len(line))
        keyword = parser.keyword()
        parser.expect("(")
        if keyword == "assumption":
            assumptions.append(parser.symbol())
        elif keyword == "goal":
            goals.append(parser.symbol())
        elif keyword in ("contrary", "prefer", "priority"):
            first = parser.symbol()
            parser.expect(",")
            second = parser.symbol()
            pair = (first, second)
            if keyword == "contrary":
                contraries.append(pair)
            elif keyword == "prefer":
                preferences.append(pair)
            else:
                priorities.append(pair)
        else:  # rule
            head = parser.symbol()
            parser.expect(",")
            parser.expect("[")
            body: list[str] = []
            token = parser.peek()
            if token is not None and token.text != "]":
                body.append(parser.symbol())
                while True:
                    token = parser.peek()
                    if token is not None and token.text == ",":
                        parser.expect(",")
                        body.append(parser.symbol())
                    else:
                        break
            parser.expect("]")
            rules.append((head, tuple(body)))
        parser.expect(")")
        parser.expect(".")
        parser.end()

    return ParsedProgram(
        raw=RawFramework.of(
            rules=rules,
            assumptions=assumptions,
            contraries=contraries,
            preferences=preferences,
        ),
        goals=tuple(goals),
        priorities=tuple(priorities),
    )


def _nonreflexive(pairs: Iterable[tuple[str, str]]) -> list[tuple[str, str]]:
    return sorted((a, b) for a, b in pairs if a != b)


def serialize_framework(
    framework: AbaFramework,
    goals: Iterable = (),
    priority_pairs: Iterable[tuple] = (),
) -> str:
    """Render a framework (and optional goal layer) in the textual format.

    The preference and priority are emitted as their closures minus the
    reflexive pairs; re-parsing and re-validating reproduces the closure, so
    serialize/parse round-trips are exact.
    """
    lines: list[str] = []
    for asm in sorted(framework.assumptions):
        lines.append(f"assumption({asm.symbol}).")
    for asm, contrary in framework.contrary_items:
        lines.append(f"contrary({asm.symbol}, {contrary.symbol}).")
    for rule in sorted(framework.rules, key=lambda r: r.sort_key()):
        body = ", ".join(sorted(s.symbol for s in rule.body))
        lines.append(f"rule({rule.head.symbol}, [{body}]).")
    for low, high in _nonreflexive(
        (a.symbol, b.symbol) for a, b in framework.preference.pairs
    ):
        lines.append(f"prefer({low}, {high}).")
    for goal in sorted(str(g) for g in goals):
        lines.append(f"goal({goal}).")
    for low, high in _nonreflexive(
        (str(a), str(b)) for a, b in priority_pairs
    ):
        lines.append(f"priority({low}, {high}).")
    return "\n".join(lines) + "\n"


def serialize_abapg(framework: AbapgFramework) -> str:
    return serialize_framework(
        framework.base,
        goals=framework.goals,
        priority_pairs=framework.priority.pairs,
    )
