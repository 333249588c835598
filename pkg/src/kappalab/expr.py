"""Expression language: tokenizer, recursive-descent parser, printer, evaluator.

Grammar (whitespace-insensitive):
    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)?
    atom   := rational | 'i' | symbol | dot | '(' expr ')' | 'exp' '(' expr ')'
    dot    := vector '.' vector          e.g. a.k, k.x
Symbols are a vector letter followed by an index: x0, a1, k2, q0, d3.
"""

import re
from dataclasses import dataclass

from gmpy2 import mpq

from .gaussrat import GaussRat, format_rational
from .poly import Poly, dot, layout_for

__all__ = [
    "ParseError",
    "EvalError",
    "Num",
    "Imag",
    "Sym",
    "Dot",
    "Sum",
    "Prod",
    "Pow",
    "Exp",
    "PlaneWave",
    "parse",
    "to_text",
    "evaluate",
    "from_poly",
    "VECTORS",
]

VECTORS = ("x", "a", "d", "k", "q", "w", "v")
MOMENTA = ("k", "q", "w", "v")


class ParseError(ValueError):
    """Syntax error with the 0-based character offset of the problem."""

    def __init__(self, message, pos, text=""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")

    def caret(self):
        return f"{self.text}\n{' ' * self.pos}^"


class EvalError(ValueError):
    """An expression that parses but has no value in the requested setting."""


# -- AST ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: object  # mpq, non-negative


@dataclass(frozen=True)
class Imag:
    pass


@dataclass(frozen=True)
class Sym:
    group: str
    index: int


@dataclass(frozen=True)
class Dot:
    left: str
    right: str


@dataclass(frozen=True)
class Sum:
    items: tuple  # ((sign, node), ...) with sign '+' or '-'


@dataclass(frozen=True)
class Prod:
    factors: tuple


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Exp:
    arg: object


# -- tokenizer ---------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>\d+(?:\s*/\s*\d+)?)"
    r"|(?P<dot>[a-z]\s*\.\s*[a-z](?![a-z0-9]))"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*^()])"
    r")"
)


def _tokens(text):
    pos = 0
    out = []
    text = text.replace("−", "-")
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start, text)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out, text


class _Parser:
    def __init__(self, text):
        self.toks, self.text = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok[2], self.text)

    def expect(self, value):
        tok = self.peek()
        if tok[0] != "op" or tok[1] != value:
            self.error(f"expected {value!r}")
        return self.take()

    def is_op(self, value):
        tok = self.peek()
        return tok[0] == "op" and tok[1] == value

    def expr(self):
        items = []
        sign = "+"
        if self.is_op("-"):
            self.take()
            sign = "-"
        items.append((sign, self.term()))
        while self.is_op("+") or self.is_op("-"):
            sign = self.take()[1]
            items.append((sign, self.term()))
        if len(items) == 1 and items[0][0] == "+":
            return items[0][1]
        return Sum(tuple(items))

    def term(self):
        factors = [self.factor()]
        while self.is_op("*"):
            self.take()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Prod(tuple(factors))

    def factor(self):
        base = self.atom()
        if self.is_op("^"):
            self.take()
            tok = self.peek()
            if tok[0] != "num" or "/" in tok[1]:
                self.error("expected a natural exponent")
            self.take()
            return Pow(base, int(tok[1]))
        return base

    def atom(self):
        tok = self.peek()
        kind, value, pos = tok
        if kind == "num":
            num, _, den = value.replace(" ", "").partition("/")
            if den and int(den) == 0:
                self.error("zero denominator")
            self.take()
            return Num(mpq(int(num), int(den or 1)))
        if kind == "dot":
            self.take()
            left, right = (s.strip() for s in value.split("."))
            for s in (left, right):
                if s not in VECTORS:
                    raise ParseError(f"unknown vector {s!r}", pos, self.text)
            return Dot(left, right)
        if kind == "name":
            self.take()
            if value == "i":
                return Imag()
            if value == "exp":
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Exp(arg)
            m = re.fullmatch(r"([a-z])(\d+)", value)
            if not m or m.group(1) not in VECTORS:
                raise ParseError(f"unknown symbol {value!r}", pos, self.text)
            return Sym(m.group(1), int(m.group(2)))
        if kind == "op" and value == "(":
            self.take()
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected {value!r}")


def parse(text):
    """Parse text into an AST; raises ParseError with a position."""
    if not isinstance(text, str):
        raise TypeError("parse expects a string")
    p = _Parser(text)
    try:
        node = p.expr()
    except RecursionError:
        raise ParseError("expression nested too deeply", 0, text) from None
    if p.peek()[0] != "end":
        p.error(f"unexpected {p.peek()[1]!r}")
    return node


# -- printer -----------------------------------------------------------------------


def _is_atomic(node):
    return isinstance(node, (Num, Imag, Sym, Exp)) and not (isinstance(node, Num) and node.value.denominator != 1)


def to_text(node):
    """Canonical text; parse(to_text(e)) == e for every parsed e."""
    if isinstance(node, Num):
        return format_rational(node.value)
    if isinstance(node, Imag):
        return "i"
    if isinstance(node, Sym):
        return f"{node.group}{node.index}"
    if isinstance(node, Dot):
        return f"{node.left}.{node.right}"
    if isinstance(node, Exp):
        return f"exp({to_text(node.arg)})"
    if isinstance(node, Pow):
        base = to_text(node.base)
        if not _is_atomic(node.base):
            base = f"({base})"
        return f"{base}^{node.exponent}"
    if isinstance(node, Prod):
        parts = []
        for f in node.factors:
            s = to_text(f)
            parts.append(f"({s})" if isinstance(f, (Sum, Prod)) else s)
        return "*".join(parts)
    if isinstance(node, Sum):
        out = []
        for idx, (sign, t) in enumerate(node.items):
            s = to_text(t)
            if isinstance(t, Sum):
                s = f"({s})"
            if idx == 0:
                out.append(s if sign == "+" else f"-{s}")
            else:
                out.append(f" {sign} {s}")
        return "".join(out)
    raise TypeError(f"not an expression node: {node!r}")


# -- evaluation --------------------------------------------------------------------


@dataclass(frozen=True)
class PlaneWave:
    """exp(i p.x) for a momentum vector p."""

    momentum: str


def evaluate(node, n, order):
    """Evaluate to a Poly in dimension n at truncation order; plane waves give PlaneWave."""
    if isinstance(node, Exp):
        arg = node.arg
        if isinstance(arg, Prod) and len(arg.factors) == 2 and isinstance(arg.factors[0], Imag):
            inner = arg.factors[1]
            if isinstance(inner, Dot) and "x" in (inner.left, inner.right):
                p = inner.right if inner.left == "x" else inner.left
                if p in MOMENTA:
                    return PlaneWave(p)
        raise EvalError("exp(...) is supported only as a plane wave exp(i*k.x)")
    if _degree_bound(node) > MAX_DEGREE:
        raise EvalError(f"polynomial degree exceeds {MAX_DEGREE}")
    return _eval_poly(node, layout_for(n), order)


MAX_DEGREE = 120
MAX_EXPONENT = 1000


def _degree_bound(node):
    if isinstance(node, Sym):
        return 1
    if isinstance(node, Dot):
        return 2
    if isinstance(node, Pow):
        return _degree_bound(node.base) * node.exponent
    if isinstance(node, Prod):
        return sum(_degree_bound(f) for f in node.factors)
    if isinstance(node, Sum):
        return max(_degree_bound(t) for _, t in node.items)
    return 0


def _eval_poly(node, L, order):
    if isinstance(node, Num):
        return Poly.const(L, order, node.value)
    if isinstance(node, Imag):
        return Poly.const(L, order, GaussRat(0, 1))
    if isinstance(node, Sym):
        if node.index >= L.n:
            raise EvalError(f"{node.group}{node.index} is out of range for dimension {L.n}")
        return Poly.var(L, order, node.group, node.index)
    if isinstance(node, Dot):
        return dot(Poly.vector(L, order, node.left), Poly.vector(L, order, node.right))
    if isinstance(node, Pow):
        if node.exponent > MAX_EXPONENT:
            raise EvalError(f"exponent exceeds {MAX_EXPONENT}")
        return _eval_poly(node.base, L, order) ** node.exponent
    if isinstance(node, Prod):
        out = Poly.one(L, order)
        for f in node.factors:
            out = out * _eval_poly(f, L, order)
        return out
    if isinstance(node, Sum):
        out = Poly.zero(L, order)
        for sign, t in node.items:
            v = _eval_poly(t, L, order)
            out = out + v if sign == "+" else out - v
        return out
    if isinstance(node, Exp):
        raise EvalError("a plane wave cannot appear inside a polynomial expression")
    raise TypeError(f"not an expression node: {node!r}")


def from_poly(p):
    """AST of a Poly in its canonical graded printed form."""
    return parse(str(p))
