"""
Scanner for `.liealg` sources.

Tokens: identifiers, rational literals with an optional imaginary suffix
(`3`, `3/2`, `2i`, `1/2i`), punctuation `( ) [ ] { } , ; = + - *`.
`#` starts a comment that runs to the end of the line.
"""

import re
from typing import List, NamedTuple

from tpsbench.app.core.exceptions import ParseError, SourceSpan

KEYWORDS = {"algebra", "family", "offset", "grade", "bracket", "product"}
PUNCTUATION = set("()[]{},;=+-*")

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\f\v]+)"
    r"|(?P<newline>\n)"
    r"|(?P<comment>\#[^\n]*)"
    r"|(?P<number>\d+(?:/\d+)?i?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<punct>[()\[\]{},;=+\-*])"
)


class Token(NamedTuple):
    kind: str       # IDENT, KEYWORD, NUMBER, PUNCT or EOF
    text: str
    line: int
    column: int

    @property
    def span(self) -> SourceSpan:
        return SourceSpan(self.line, self.column, len(self.text))

    def describe(self) -> str:
        return "end of input" if self.kind == "EOF" else repr(self.text)


def tokenize(text: str) -> List[Token]:
    """Split source text into tokens, ending with a single EOF token.

    Raises:
        ParseError: kind "lex" on an unexpected character or a zero denominator.
    """
    tokens: List[Token] = []
    line, line_start, pos = 1, 0, 0
    last_line, last_column = 1, 1

    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        column = pos - line_start + 1
        if match is None:
            raise ParseError(SourceSpan(line, column, 1), "lex", f"unexpected character {text[pos]!r}")

        kind = match.lastgroup
        lexeme = match.group()
        if kind == "newline":
            line += 1
            line_start = match.end()
        elif kind == "number":
            body = lexeme.rstrip("i")
            if "/" in body and int(body.split("/")[1]) == 0:
                raise ParseError(SourceSpan(line, column, len(lexeme)), "lex", f"zero denominator in {lexeme!r}")
            tokens.append(Token("NUMBER", lexeme, line, column))
        elif kind == "ident":
            tokens.append(Token("KEYWORD" if lexeme in KEYWORDS else "IDENT", lexeme, line, column))
        elif kind == "punct":
            tokens.append(Token("PUNCT", lexeme, line, column))

        if kind not in ("ws", "newline", "comment"):
            last_line, last_column = line, column + len(lexeme) - 1
        pos = match.end()

    # EOF sits on the last character of the final token so spans stay inside the text
    tokens.append(Token("EOF", "", last_line, last_column))
    return tokens
