"""Expression grammar: tokenizer, recursive-descent parser and AST printer.

    sum     := unary (('+' | '-') unary)*
    unary   := '-' unary | product
    product := power (('*' | '/') power)*
    power   := postfix ('^' '-'? INT)?
    postfix := atom ('(' sum ')')?          -- derivation application vf(f)
    atom    := INT | 'I' | NAME | '@' NAME | '(' sum ')'
             | 'exp' '(' sum ')' | 'd' '(' sum ')'
             | 'i_' '(' sum ',' sum ')' | 'L_' '(' sum ',' sum ')'
             | '[' sum ',' sum ']'

Juxtaposition is not multiplication.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union


class ExpressionError(ValueError):
    """Error tied to a source position (1-based line and column)."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class ParseError(ExpressionError):
    pass


Pos = tuple  # (line, column)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: Pos


_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()\[\],@])"
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start = 1, 0
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        pos = (line, i - line_start + 1)
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}", *pos)
        kind = m.lastgroup
        if kind == "ws":
            for k, ch in enumerate(m.group(), start=i):
                if ch == "\n":
                    line, line_start = line + 1, k + 1
        else:
            tokens.append(Token(kind, m.group(), pos))
        i = m.end()
    tokens.append(Token("end", "", (line, len(text) - line_start + 1)))
    return tokens


# -- AST ---------------------------------------------------------------------


def _pos():
    return field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Num:
    value: int
    pos: Pos = _pos()


@dataclass(frozen=True)
class Imag:
    pos: Pos = _pos()


@dataclass(frozen=True)
class Name:
    name: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class Frame:
    name: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    pos: Pos = _pos()


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int
    pos: Pos = _pos()


@dataclass(frozen=True)
class Exp:
    arg: "Node"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Diff:
    arg: "Node"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Interior:
    field: "Node"
    form: "Node"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Lie:
    field: "Node"
    form: "Node"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Bracket:
    left: "Node"
    right: "Node"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Apply:
    field: "Node"
    arg: "Node"
    pos: Pos = _pos()


Node = Union[Num, Imag, Name, Frame, Neg, BinOp, Pow, Exp, Diff, Interior, Lie, Bracket, Apply]

KEYWORDS = {"exp", "d", "i_", "L_", "I"}


# -- parser -------------------------------------------------------------------


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.k = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.k]

    def advance(self) -> Token:
        t = self.tokens[self.k]
        self.k += 1
        return t

    def accept(self, text: str) -> Optional[Token]:
        if self.tok.kind == "op" and self.tok.text == text:
            return self.advance()
        return None

    def expect(self, text: str) -> Token:
        t = self.accept(text)
        if t is None:
            found = self.tok.text or "end of input"
            raise ParseError(f"expected {text!r}, found {found!r}", *self.tok.pos)
        return t

    def parse(self) -> Node:
        node = self.sum()
        if self.tok.kind != "end":
            hint = " (juxtaposition is not multiplication; use '*')" if self.tok.kind in ("name", "int") else ""
            raise ParseError(f"unexpected {self.tok.text!r}{hint}", *self.tok.pos)
        return node

    def sum(self) -> Node:
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance()
            node = BinOp(op.text, node, self.unary(), op.pos)
        return node

    def unary(self) -> Node:
        t = self.accept("-")
        if t:
            return Neg(self.unary(), t.pos)
        return self.product()

    def product(self) -> Node:
        node = self.power()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance()
            node = BinOp(op.text, node, self.power(), op.pos)
        return node

    def power(self) -> Node:
        node = self.postfix()
        t = self.accept("^")
        if t:
            negative = bool(self.accept("-"))
            if self.tok.kind != "int":
                raise ParseError("exponent must be an integer literal", *self.tok.pos)
            value = int(self.advance().text)
            node = Pow(node, -value if negative else value, t.pos)
        return node

    def postfix(self) -> Node:
        node = self.atom()
        if isinstance(node, (Name, Frame, Bracket)) and self.tok.kind == "op" and self.tok.text == "(":
            t = self.advance()
            arg = self.sum()
            self.expect(")")
            node = Apply(node, arg, t.pos)
        return node

    def _call(self, arity: int):
        self.expect("(")
        args = [self.sum()]
        for _ in range(arity - 1):
            self.expect(",")
            args.append(self.sum())
        self.expect(")")
        return args

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "int":
            self.advance()
            return Num(int(t.text), t.pos)
        if t.kind == "name":
            self.advance()
            if t.text == "I":
                return Imag(t.pos)
            if t.text == "exp":
                return Exp(*self._call(1), pos=t.pos)
            if t.text == "d":
                return Diff(*self._call(1), pos=t.pos)
            if t.text == "i_":
                return Interior(*self._call(2), pos=t.pos)
            if t.text == "L_":
                return Lie(*self._call(2), pos=t.pos)
            return Name(t.text, t.pos)
        if t.kind == "op":
            if t.text == "@":
                self.advance()
                if self.tok.kind != "name":
                    raise ParseError("expected a coordinate name after '@'", *self.tok.pos)
                return Frame(self.advance().text, t.pos)
            if t.text == "(":
                self.advance()
                node = self.sum()
                self.expect(")")
                return node
            if t.text == "[":
                self.advance()
                left = self.sum()
                self.expect(",")
                right = self.sum()
                self.expect("]")
                return Bracket(left, right, t.pos)
        found = t.text or "end of input"
        raise ParseError(f"unexpected {found!r}", *t.pos)


def parse_expression(text: str) -> Node:
    return Parser(text).parse()


# -- printer ------------------------------------------------------------------

_SUM, _NEG, _PRODUCT, _POWER, _ATOM = range(5)


def _level(node: Node) -> int:
    if isinstance(node, BinOp):
        return _SUM if node.op in "+-" else _PRODUCT
    if isinstance(node, Neg):
        return _NEG
    if isinstance(node, Pow):
        return _POWER
    return _ATOM


def _wrap(node: Node, minimum: int) -> str:
    text = to_source(node)
    return f"({text})" if _level(node) < minimum else text


def to_source(node: Node) -> str:
    """Print an AST so that parsing the result gives back an equal AST."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Imag):
        return "I"
    if isinstance(node, Name):
        return node.name
    if isinstance(node, Frame):
        return "@" + node.name
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, _NEG)
    if isinstance(node, BinOp):
        if node.op in "+-":
            return f"{_wrap(node.left, _SUM)} {node.op} {_wrap(node.right, _NEG)}"
        return f"{_wrap(node.left, _PRODUCT)}{node.op}{_wrap(node.right, _POWER)}"
    if isinstance(node, Pow):
        return f"{_wrap(node.base, _ATOM)}^{node.exponent}"
    if isinstance(node, Exp):
        return f"exp({to_source(node.arg)})"
    if isinstance(node, Diff):
        return f"d({to_source(node.arg)})"
    if isinstance(node, Interior):
        return f"i_({to_source(node.field)}, {to_source(node.form)})"
    if isinstance(node, Lie):
        return f"L_({to_source(node.field)}, {to_source(node.form)})"
    if isinstance(node, Bracket):
        return f"[{to_source(node.left)}, {to_source(node.right)}]"
    if isinstance(node, Apply):
        head = to_source(node.field)
        if not isinstance(node.field, (Name, Frame, Bracket)):
            head = f"({head})"
        return f"{head}({to_source(node.arg)})"
    raise TypeError(f"not an expression node: {node!r}")
