from pathlib import Path
from typing import List, Tuple

from mutdiff.constants import BINARY_PRECEDENCE, RELATIONAL_OPERATORS
from mutdiff.exceptions import SourceSyntaxException, UnsupportedConstructException
from mutdiff.models.ast import (
    Assign,
    Binary,
    BoolConst,
    Decl,
    Expression,
    If,
    IntConst,
    Program,
    SourceLocation,
    Statement,
    Unary,
    VarDecl,
    VarRef,
    VarType,
    While,
)
from mutdiff.services.lang.checker import check_program
from mutdiff.services.lang.lexer import Token, tokenize


class Parser:
    """Recursive-descent parser for the mini-language.

    program := 'program' IDENT ';' {('input' | 'output') type IDENT ';'} {statement}
    """

    def __init__(self, source_text: str):
        self.tokens = tokenize(source_text)
        self.pos = 0

    # Token helpers

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def _at(self, text: str) -> bool:
        return self.current.kind in ("SYMBOL", "KEYWORD") and self.current.text == text

    def _advance(self) -> Token:
        token = self.current
        if token.kind != "EOF":
            self.pos += 1
        return token

    def _expect(self, text: str) -> Token:
        if not self._at(text):
            self._fail(f"expected '{text}'")
        return self._advance()

    def _expect_ident(self) -> Token:
        if self.current.kind != "IDENT":
            self._fail("expected an identifier")
        return self._advance()

    def _fail(self, message: str):
        token = self.current
        found = "end of input" if token.kind == "EOF" else f"'{token.text}'"
        raise SourceSyntaxException(f"{message}, found {found}", token.line, token.col)

    @staticmethod
    def _loc(token: Token) -> SourceLocation:
        return SourceLocation(token.line, token.col)

    # Grammar

    def parse_program(self) -> Program:
        self._expect("program")
        name = self._expect_ident().text
        self._expect(";")

        inputs: List[VarDecl] = []
        outputs: List[VarDecl] = []
        while self._at("input") or self._at("output"):
            role = self._advance().text
            var_type = self._parse_type()
            var_name = self._expect_ident().text
            self._expect(";")
            (inputs if role == "input" else outputs).append(VarDecl(var_name, var_type))

        body = []
        while self.current.kind != "EOF":
            body.append(self._parse_statement())

        return check_program(name, tuple(inputs), tuple(outputs), tuple(body))

    def _parse_type(self) -> VarType:
        if self._at("int") or self._at("bool"):
            return VarType(self._advance().text)
        self._fail("expected a type ('int' or 'bool')")

    def _parse_block(self) -> Tuple[Statement, ...]:
        self._expect("{")
        statements = []
        while not self._at("}"):
            if self.current.kind == "EOF":
                self._fail("expected '}'")
            statements.append(self._parse_statement())
        self._expect("}")
        return tuple(statements)

    def _parse_statement(self) -> Statement:
        token = self.current

        if self._at("int") or self._at("bool"):
            var_type = self._parse_type()
            name = self._expect_ident().text
            self._expect("=")
            init = self._parse_expression()
            self._expect(";")
            return Decl(name, var_type, init, self._loc(token))

        if self._at("if"):
            return self._parse_if()

        if self._at("while"):
            self._advance()
            self._expect("(")
            cond = self._parse_expression()
            self._expect(")")
            body = self._parse_block()
            return While(cond, body, self._loc(token))

        if self._at("input") or self._at("output"):
            self._fail("declarations of inputs and outputs must precede all statements")

        if token.kind == "IDENT":
            if self._peek().kind == "SYMBOL" and self._peek().text == "(":
                raise UnsupportedConstructException(f"procedure call '{token.text}(...)'", token.line, token.col)
            self._advance()
            self._expect("=")
            value = self._parse_expression()
            self._expect(";")
            return Assign(token.text, value, self._loc(token))

        self._fail("expected a statement")

    def _parse_if(self) -> If:
        token = self._expect("if")
        self._expect("(")
        cond = self._parse_expression()
        self._expect(")")
        then_body = self._parse_block()
        else_body: Tuple[Statement, ...] = ()
        if self._at("else"):
            self._advance()
            else_body = (self._parse_if(),) if self._at("if") else self._parse_block()
        return If(cond, then_body, else_body, self._loc(token))

    def _parse_expression(self, min_precedence: int = 1) -> Expression:
        lhs = self._parse_unary()
        while True:
            token = self.current
            precedence = BINARY_PRECEDENCE.get(token.text) if token.kind in ("SYMBOL", "KEYWORD") else None
            if precedence is None or precedence < min_precedence:
                return lhs
            self._advance()
            rhs = self._parse_expression(precedence + 1)
            lhs = Binary(token.text, lhs, rhs, self._loc(token))
            if token.text in RELATIONAL_OPERATORS and self.current.text in RELATIONAL_OPERATORS:
                self._fail("comparison operators do not chain; add parentheses")

    def _parse_unary(self) -> Expression:
        token = self.current
        if self._at("-"):
            self._advance()
            # A minus sign directly in front of a literal is part of the literal
            if self.current.kind == "INT":
                return IntConst(-int(self._advance().text), self._loc(token))
            return Unary("-", self._parse_unary(), self._loc(token))
        if self._at("not"):
            self._advance()
            return Unary("not", self._parse_unary(), self._loc(token))
        return self._parse_primary()

    def _parse_primary(self) -> Expression:
        token = self.current
        if token.kind == "INT":
            self._advance()
            return IntConst(int(token.text), self._loc(token))
        if self._at("true") or self._at("false"):
            self._advance()
            return BoolConst(token.text == "true", self._loc(token))
        if token.kind == "IDENT":
            self._advance()
            if self._at("("):
                raise UnsupportedConstructException(f"procedure call '{token.text}(...)'", token.line, token.col)
            return VarRef(token.text, self._loc(token))
        if self._at("("):
            self._advance()
            expr = self._parse_expression()
            self._expect(")")
            return expr
        self._fail("expected an expression")


def parse(source_text: str) -> Program:
    """Parse and check mini-language source text into a well-typed Program."""
    return Parser(source_text).parse_program()


def read_source(path: Path) -> str:
    """Read a source file as UTF-8; an undecodable byte is a syntax error at its position."""
    data = Path(path).read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        before = data[: e.start]
        line = before.count(b"\n") + 1
        col = e.start - before.rfind(b"\n")
        raise SourceSyntaxException(f"invalid UTF-8 byte 0x{data[e.start]:02x}", line, col) from e
