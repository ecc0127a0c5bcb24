"""Recursive-descent parser for manifold expressions.

Grammar::

    expr   := term { '+' term }
    term   := factor { '*' factor }
    factor := '-' factor | '(' expr ')' | atom
    atom   := NAME '(' INT ')' | 'Wu' | 'Point'
    NAME   := 'S' | 'T' | 'RP' | 'CP' | 'SU' | 'SigmaD'

``*`` is the Cartesian product, ``+`` disjoint union and unary ``-``
reverses orientation.  Error positions are byte offsets into the UTF-8
encoded input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from ..errors import DimensionMismatch, ParseError, UnknownAtom

PARAMETRIC = ("S", "T", "RP", "CP", "SU", "SigmaD")
BARE = ("Wu", "Point")

_DIMENSION = {
    "S": lambda n: n,
    "T": lambda n: n,
    "RP": lambda n: n,
    "CP": lambda n: 2 * n,
    "SU": lambda n: n * n - 1,
    "SigmaD": lambda d: 4,
}


@dataclass(frozen=True)
class Atom:
    name: str
    param: int | None = None

    @property
    def dim(self) -> int:
        if self.name == "Wu":
            return 5
        if self.name == "Point":
            return 0
        return _DIMENSION[self.name](self.param)

    def __str__(self) -> str:
        return self.name if self.param is None else f"{self.name}({self.param})"


@dataclass(frozen=True)
class Product:
    factors: tuple["Expr", ...]

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    def __str__(self) -> str:
        return " * ".join(_wrap(f, (DisjointUnion,)) for f in self.factors)


@dataclass(frozen=True)
class DisjointUnion:
    terms: tuple["Expr", ...]

    @property
    def dim(self) -> int:
        return self.terms[0].dim

    def __str__(self) -> str:
        return " + ".join(str(t) for t in self.terms)


@dataclass(frozen=True)
class Reverse:
    inner: "Expr"

    @property
    def dim(self) -> int:
        return self.inner.dim

    def __str__(self) -> str:
        return "-" + _wrap(self.inner, (DisjointUnion, Product))


Expr = Union[Atom, Product, DisjointUnion, Reverse]


def _wrap(e: Expr, kinds) -> str:
    return f"({e})" if isinstance(e, kinds) else str(e)


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*()]))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # 'int', 'name', 'op', 'end'
    text: str
    pos: int  # byte offset


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    i = 0
    while True:
        while i < len(text) and text[i].isspace():
            i += 1
        if i >= len(text):
            break
        m = _TOKEN.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}", _byte_offset(text, i), text=text)
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), _byte_offset(text, m.start(kind))))
        i = m.end()
    toks.append(_Tok("end", "", len(text.encode())))
    return toks


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode())


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, message: str, expected=()):
        raise ParseError(message, self.tok.pos, tuple(expected), text=self.text)

    def expect(self, text: str):
        if self.tok.text != text or self.tok.kind != "op":
            self.fail(f"unexpected {self._describe()}", (repr(text),))
        self.i += 1

    def _describe(self) -> str:
        return "end of input" if self.tok.kind == "end" else repr(self.tok.text)

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            self.fail(f"unexpected {self._describe()}", ("'+'", "'*'", "end of input"))
        return e

    def expr(self) -> Expr:
        start = self.tok.pos
        terms = [self.term()]
        while self.tok.text == "+" and self.tok.kind == "op":
            plus = self.tok.pos
            self.i += 1
            t = self.term()
            if t.dim != terms[0].dim:
                raise DimensionMismatch(
                    f"disjoint union of a {terms[0].dim}-manifold and a {t.dim}-manifold "
                    f"(operator at offset {plus}, expression starting at offset {start})"
                )
            terms.append(t)
        return terms[0] if len(terms) == 1 else DisjointUnion(tuple(terms))

    def term(self) -> Expr:
        factors = [self.factor()]
        while self.tok.text == "*" and self.tok.kind == "op":
            self.i += 1
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self) -> Expr:
        tok = self.tok
        if tok.kind == "op" and tok.text == "-":
            self.i += 1
            return Reverse(self.factor())
        if tok.kind == "op" and tok.text == "(":
            self.i += 1
            e = self.expr()
            self.expect(")")
            return e
        if tok.kind == "name":
            return self.atom()
        self.fail(f"unexpected {self._describe()}", ("'-'", "'('", "manifold name"))

    def atom(self) -> Atom:
        tok = self.tok
        self.i += 1
        if tok.text in BARE:
            return Atom(tok.text)
        if tok.text not in PARAMETRIC:
            raise UnknownAtom(
                f"unknown manifold {tok.text!r}", tok.pos, PARAMETRIC + BARE, text=self.text
            )
        self.expect("(")
        if self.tok.kind != "int":
            self.fail(f"unexpected {self._describe()}", ("positive integer",))
        value, pos = int(self.tok.text), self.tok.pos
        if value < 1:
            raise ParseError(f"{tok.text} needs a positive parameter", pos, ("positive integer",), text=self.text)
        self.i += 1
        self.expect(")")
        return Atom(tok.text, value)


def parse_manifold_expr(text: str) -> Expr:
    """Parse ``text`` into an expression tree; see the module docstring for the grammar."""
    return _Parser(text).parse()
