"""Tokenizer shared by the MiniImp, HTL and suite-file parsers."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List

from .errors import SyntaxErr

_OPERATORS = [
    ":=", "<-", "->", "=>", "==", "!=", "<=", ">=", "&&", "||",
    "+", "-", "*", "/", "%", "<", ">", "!", "(", ")", "{", "}", "[", "]",
    ",", ";", "=", ".", "|",
]

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\n]+)"
    r"|(?P<comment>//[^\n]*|\#[^\n]*|/\*.*?\*/)"
    r"|(?P<int>\d+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*'*)"
    r"|(?P<op>" + "|".join(re.escape(o) for o in _OPERATORS) + r")",
    re.DOTALL,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "int" | "ident" | "op" | "eof"
    value: str
    line: int
    col: int

    def __str__(self) -> str:
        return "end of input" if self.kind == "eof" else repr(self.value)


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise SyntaxErr(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        value = m.group()
        if kind in ("int", "ident", "op"):
            tokens.append(Token(kind, value, line, pos - line_start + 1))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class TokenStream:
    """Cursor over a token list with the usual expect/accept helpers."""

    def __init__(self, tokens: List[Token], error_cls=SyntaxErr):
        self.tokens = tokens
        self.i = 0
        self.error_cls = error_cls

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, offset: int = 1) -> Token:
        j = min(self.i + offset, len(self.tokens) - 1)
        return self.tokens[j]

    def at(self, value: str) -> bool:
        t = self.tokens[self.i]
        return t.kind in ("op", "ident") and t.value == value

    def advance(self) -> Token:
        t = self.tokens[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def accept(self, value: str) -> bool:
        if self.at(value):
            self.i += 1
            return True
        return False

    def expect(self, value: str) -> Token:
        if not self.at(value):
            self.fail(f"expected {value!r}, found {self.tok}")
        return self.advance()

    def expect_ident(self) -> Token:
        if self.tok.kind != "ident":
            self.fail(f"expected identifier, found {self.tok}")
        return self.advance()

    def expect_int(self) -> int:
        if self.tok.kind != "int":
            self.fail(f"expected integer literal, found {self.tok}")
        return int(self.advance().value)

    def split_compound(self, first: str, second: str) -> None:
        """Rewrite the current token (e.g. ``<-``) as two tokens ``<`` ``-``."""
        t = self.tokens[self.i]
        self.tokens[self.i:self.i + 1] = [
            Token("op", first, t.line, t.col),
            Token("op", second, t.line, t.col + len(first)),
        ]

    def fail(self, message: str, tok: Token = None):
        tok = tok or self.tok
        raise self.error_cls(message, tok.line, tok.col)
