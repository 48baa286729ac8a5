"""Element expressions.

Grammar (whitespace or '*' between factors means multiplication)::

    expr    := factor (('*')? factor)*
    factor  := 'e' | 's' INT | 't[' INT (',' INT)* ']' | 'pi' ('^' INT)?
             | 'w0' | 'star(' expr ',' expr ')' | 'inv(' expr ')' | '(' expr ')'

Everything evaluates in the extended affine Weyl group; s0 is the affine
reflection and pi^k the k-th length-zero element.
"""

from __future__ import annotations

import re

from .affine import AffineWeylElt, AffineWeylGroup
from .demazure import star

_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<sym>[\[\](),*^]))")


class ParseError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(msg)
        self.msg, self.text, self.pos = msg, text, pos

    def __str__(self):
        return f"{self.msg} at position {self.pos}\n  {self.text}\n  {' ' * self.pos}^"


def _tokenize(text: str):
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, G: AffineWeylGroup, text: str):
        self.G = G
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self, kind=None, value=None):
        tok = self.toks[self.k]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, got {got!r}", self.text, tok[2])
        self.k += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.text, tok[2])

    def parse(self) -> AffineWeylElt:
        x = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return x

    def _starts_factor(self, tok) -> bool:
        return tok[0] == "name" or tok[1] == "("

    def expr(self) -> AffineWeylElt:
        x = self.factor()
        while True:
            tok = self.peek()
            if tok[1] == "*":
                self.take()
                x = x * self.factor()
            elif self._starts_factor(tok):
                x = x * self.factor()
            else:
                return x

    def _int(self) -> int:
        return int(self.take("int")[1])

    def factor(self) -> AffineWeylElt:
        G = self.G
        tok = self.peek()
        if tok[1] == "(":
            self.take()
            x = self.expr()
            self.take("sym", ")")
            return x
        if tok[0] != "name":
            raise self.error(f"expected an element, got {tok[1] or 'end of input'!r}")
        self.take()
        name = tok[1]
        if name in ("e", "1"):
            return G.identity
        if name == "w0":
            return G.from_finite(G.W.longest)
        m = re.fullmatch(r"s(\d+)", name)
        if m:
            i = int(m.group(1))
            if i > G.rs.rank:
                raise self.error(f"s{i} does not exist in rank {G.rs.rank}", tok)
            return G.s(i)
        if name == "t":
            self.take("sym", "[")
            coords = [self._int()]
            while self.peek()[1] == ",":
                self.take()
                coords.append(self._int())
            self.take("sym", "]")
            if len(coords) != G.rs.rank:
                raise self.error(f"t[...] needs {G.rs.rank} coordinates, got {len(coords)}", tok)
            return G.t(tuple(coords))
        if name == "pi":
            k = 1
            if self.peek()[1] == "^":
                self.take()
                k = self._int()
            omega = G.omega_elements()
            return omega[k % len(omega)]
        if name in ("star", "inv"):
            self.take("sym", "(")
            a = self.expr()
            if name == "inv":
                self.take("sym", ")")
                return a.inverse()
            self.take("sym", ",")
            b = self.expr()
            self.take("sym", ")")
            return star(a, b)
        raise self.error(f"unknown name {name!r}", tok)


def parse_element(G: AffineWeylGroup, text: str) -> AffineWeylElt:
    return _Parser(G, text).parse()


def format_element(x: AffineWeylElt, style: str = "normal") -> str:
    """"normal": t[..] word; "word": s0 s1 pi^k; "canonical": (v) t[mu] (w)."""
    G = x.group
    if style == "normal":
        return str(x)
    if style == "word":
        return G.word_str(x)
    if style == "canonical":
        return str(G.canonical_decomposition(x))
    raise ValueError(f"unknown style {style!r}")
