"""A small expression language for target functions, plus a catalog of test functions.

Grammar (whitespace insignificant)::

    expr   := sterm (('+' | '-') term)*
    sterm  := '-' sterm | term          # a leading minus negates the whole product
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | power
    power  := atom ('^' factor)?        # right associative
    atom   := NUMBER | NAME | NAME '(' expr (',' expr)* ')' | '(' expr ')'

Names: the free variable ``x`` or ``z`` (one per expression), the constants
``pi`` and ``i``, and the functions in ``FUNCTIONS``.
"""

import re
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from .errors import DomainError, ExprError, ParseError

VARIABLES = ("x", "z")
CONSTANTS = ("pi", "i")
FUNCTIONS = {
    "exp": 1, "log": 1, "sqrt": 1, "sin": 1, "cos": 1, "tan": 1, "tanh": 1,
    "abs": 1, "re": 1, "im": 1, "conj": 1, "min": 2, "max": 2,
}


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    name: str
    args: Tuple["Expr", ...]


Expr = Union[Num, Const, Var, Neg, BinOp, Call]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^(),]))"
)


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = []
        pos = 0
        while True:
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                rest = text[pos:]
                if rest.strip() == "":
                    break
                off = pos + len(rest) - len(rest.lstrip())
                raise ParseError(f"unexpected character {text[off]!r}", self._byte(off))
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.tokens.append(("end", "", len(text)))
        self.k = 0
        self.variable = None

    def _byte(self, off):
        return len(self.text[:off].encode("utf-8"))

    def peek(self):
        return self.tokens[self.k]

    def advance(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def fail(self, expected, tok=None):
        kind, value, off = tok or self.peek()
        what = "end of input" if kind == "end" else repr(value)
        raise ParseError(f"unexpected {what}", self._byte(off), expected)

    def expect(self, op):
        tok = self.peek()
        if tok[0] != "op" or tok[1] != op:
            self.fail([repr(op)])
        return self.advance()

    def parse(self):
        e = self.expr()
        if self.peek()[0] != "end":
            self.fail(["operator", "end of input"])
        return e

    def expr(self):
        e = self.sterm()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.advance()[1]
            e = BinOp(op, e, self.term())
        return e

    def sterm(self):
        if self.peek()[:2] == ("op", "-"):
            self.advance()
            return Neg(self.sterm())
        return self.term()

    def term(self):
        e = self.factor()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.advance()[1]
            e = BinOp(op, e, self.factor())
        return e

    def factor(self):
        if self.peek()[:2] == ("op", "-"):
            self.advance()
            return Neg(self.factor())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.advance()
            return BinOp("^", base, self.factor())
        return base

    def atom(self):
        tok = self.peek()
        kind, value, off = tok
        if kind == "num":
            self.advance()
            return Num(float(value))
        if kind == "op" and value == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        if kind == "name":
            self.advance()
            if value in FUNCTIONS:
                self.expect("(")
                args = [self.expr()]
                while self.peek()[:2] == ("op", ","):
                    self.advance()
                    args.append(self.expr())
                self.expect(")")
                if len(args) != FUNCTIONS[value]:
                    raise ParseError(
                        f"{value}() takes {FUNCTIONS[value]} argument(s), got {len(args)}", self._byte(off))
                return Call(value, tuple(args))
            if value in CONSTANTS:
                return Const(value)
            if value in VARIABLES:
                if self.variable not in (None, value):
                    raise ParseError(f"expression uses both {self.variable!r} and {value!r}", self._byte(off))
                self.variable = value
                return Var(value)
            raise ParseError(f"unknown identifier {value!r}", self._byte(off))
        self.fail(["number", "identifier", "'('", "'-'"])


def parse(text):
    """Parse expression text into an AST."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    return _Parser(text).parse()


def to_text(e):
    """Print an AST so that ``parse(to_text(e)) == e``."""
    if isinstance(e, Num):
        return repr(float(e.value))
    if isinstance(e, (Const, Var)):
        return e.name
    if isinstance(e, Neg):
        return f"(-{to_text(e.arg)})"
    if isinstance(e, BinOp):
        return f"({to_text(e.left)} {e.op} {to_text(e.right)})"
    if isinstance(e, Call):
        return f"{e.name}({', '.join(to_text(a) for a in e.args)})"
    raise TypeError(f"not an expression node: {e!r}")


def _real_or_fail(a, name):
    a = np.asarray(a)
    if np.iscomplexobj(a):
        if np.any(a.imag != 0):
            raise DomainError(f"{name}() is only defined for real arguments")
        a = a.real
    return a


def _power(a, b):
    a, b = np.asarray(a), np.asarray(b)
    if not (np.iscomplexobj(a) or np.iscomplexobj(b)):
        if np.any((a < 0) & (b != np.round(b))):
            a = a.astype(complex)
    return np.power(a, b)


_UNARY = {
    "exp": np.exp,
    "log": np.emath.log,
    "sqrt": np.emath.sqrt,
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "tanh": np.tanh,
    "abs": np.abs,
    "re": np.real,
    "im": np.imag,
    "conj": np.conj,
}

_BINARY = {
    "+": np.add,
    "-": np.subtract,
    "*": np.multiply,
    "/": np.true_divide,
    "^": _power,
}


def _eval(e, v):
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        return v
    if isinstance(e, Const):
        return np.pi if e.name == "pi" else 1j
    if isinstance(e, Neg):
        return np.negative(_eval(e.arg, v))
    if isinstance(e, BinOp):
        return _BINARY[e.op](_eval(e.left, v), _eval(e.right, v))
    if isinstance(e, Call):
        args = [_eval(a, v) for a in e.args]
        if e.name in ("min", "max"):
            a, b = (_real_or_fail(x, e.name) for x in args)
            return (np.minimum if e.name == "min" else np.maximum)(a, b)
        return _UNARY[e.name](args[0])
    raise ExprError(f"not an expression node: {e!r}")


def evaluate(e, v):
    """Evaluate ``e`` at scalar or array ``v`` with IEEE semantics and principal branches."""
    v = np.asarray(v)
    if v.dtype.kind in "iub":
        v = v.astype(float)
    with np.errstate(all="ignore"):
        out = np.asarray(_eval(e, v))
    out = np.broadcast_to(out, np.broadcast_shapes(out.shape, v.shape)).copy()
    return out if out.ndim else out[()]


class FunctionSpec:
    """A target function given as expression text; callable on arrays."""

    def __init__(self, text, name=None):
        text = text.strip()
        if text in FUNCTIONS and FUNCTIONS[text] == 1:
            text = f"{text}(x)"
        self.text = text
        self.name = name
        self.expr = parse(text)

    def __call__(self, v):
        return evaluate(self.expr, v)

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"FunctionSpec({label}{self.text!r})"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    text: str
    domain: str  # "interval", "circle" or "imaginary-axis"
    mero: bool = False

    def spec(self):
        return FunctionSpec(self.text, self.name)


CATALOG = {
    e.name: e
    for e in [
        CatalogEntry("runge-exp", "exp(x)", "interval"),
        CatalogEntry("abs-x", "abs(x)", "interval"),
        CatalogEntry("exp-inv-sq", "exp(-1/x^2)", "interval"),
        CatalogEntry("cmv", "exp((x-1)/(x+1))", "interval"),
        CatalogEntry("fermi-dirac", "1/(1+exp(1000*(x+0.5)))", "interval"),
        CatalogEntry("tanh-100x", "tanh(100*x)", "interval"),
        CatalogEntry("tanh-1000x", "tanh(1000*x)", "interval"),
        CatalogEntry("relu", "max(0, x)", "interval"),
        CatalogEntry("abs-shift", "abs(x-0.95)", "interval"),
        CatalogEntry("sqrt-branch", "sqrt(1-z)", "circle"),
        CatalogEntry("circle-branch", "sqrt(1-z^-2/4)", "circle", mero=True),
        CatalogEntry("tan-z4", "tan(z^4)", "circle"),
        CatalogEntry("tan-zm4", "tan(z^-4)", "circle", mero=True),
        CatalogEntry("exp-4-over-z", "exp(4/z)", "circle", mero=True),
        CatalogEntry("abs-re-z", "abs(re(z))", "circle", mero=True),
        CatalogEntry("two-branch-axis", "1/(sqrt(z-(-1+10*i))*sqrt(z-(-1-10*i)))", "imaginary-axis"),
    ]
}


def catalog(name):
    try:
        return CATALOG[name].spec()
    except KeyError:
        raise ExprError(f"unknown catalog entry {name!r}; choose from {', '.join(sorted(CATALOG))}") from None
