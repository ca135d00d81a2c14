import string
from dataclasses import dataclass
from typing import List

from mutdiff.constants import KEYWORDS, UNSUPPORTED_KEYWORDS
from mutdiff.exceptions import SourceSyntaxException, UnsupportedConstructException

DIGITS = frozenset(string.digits)
IDENTIFIER_START = frozenset(string.ascii_letters + "_")
IDENTIFIER_CHARS = IDENTIFIER_START | DIGITS

# Longest symbols first so that "<=" wins over "<"
SYMBOLS = ("<=", ">=", "==", "!=", "(", ")", "{", "}", ";", "=", "<", ">", "+", "-", "*", "/", "%", ",")
UNSUPPORTED_SYMBOLS = {
    "[": "array access",
    "]": "array access",
    ".": "member access or float literal",
    '"': "string literal",
    "'": "character literal",
    "&": "C-style logical operator (use 'and')",
    "|": "C-style logical operator (use 'or')",
    "!": "C-style negation (use 'not')",
}


@dataclass(frozen=True)
class Token:
    kind: str  # INT, IDENT, KEYWORD, SYMBOL, EOF
    text: str
    line: int
    col: int


def tokenize(source_text: str) -> List[Token]:
    tokens: List[Token] = []
    pos, line, col = 0, 1, 1
    length = len(source_text)

    while pos < length:
        char = source_text[pos]

        if char == "\n":
            pos, line, col = pos + 1, line + 1, 1
            continue
        if char in " \t\r":
            pos, col = pos + 1, col + 1
            continue
        if source_text.startswith("//", pos):
            while pos < length and source_text[pos] != "\n":
                pos += 1
            continue

        if char in DIGITS:
            start = pos
            while pos < length and source_text[pos] in DIGITS:
                pos += 1
            if pos < length and source_text[pos] == "." and pos + 1 < length and source_text[pos + 1] in DIGITS:
                raise UnsupportedConstructException("float literal", line, col)
            if pos < length and source_text[pos] in IDENTIFIER_CHARS:
                raise SourceSyntaxException(f"malformed number '{source_text[start:pos + 1]}'", line, col)
            tokens.append(Token("INT", source_text[start:pos], line, col))
            col += pos - start
            continue

        if char in IDENTIFIER_START:
            start = pos
            while pos < length and source_text[pos] in IDENTIFIER_CHARS:
                pos += 1
            word = source_text[start:pos]
            if word in UNSUPPORTED_KEYWORDS:
                raise UnsupportedConstructException(f"'{word}'", line, col)
            tokens.append(Token("KEYWORD" if word in KEYWORDS else "IDENT", word, line, col))
            col += pos - start
            continue

        symbol = next((s for s in SYMBOLS if source_text.startswith(s, pos)), None)
        if symbol is not None:
            tokens.append(Token("SYMBOL", symbol, line, col))
            pos, col = pos + len(symbol), col + len(symbol)
            continue

        if char in UNSUPPORTED_SYMBOLS:
            raise UnsupportedConstructException(UNSUPPORTED_SYMBOLS[char], line, col)
        raise SourceSyntaxException(f"unexpected character {char!r}", line, col)

    tokens.append(Token("EOF", "", line, col))
    return tokens
