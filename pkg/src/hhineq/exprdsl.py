"""Small expression language for scalar functions of one variable ``x``.

Expressions are parsed into an immutable AST that can be evaluated on floats
or numpy arrays, differentiated symbolically and printed back to text.

>>> f = parse("x*ln(x)")
>>> evaluate(differentiate(f), math.e)
2.0
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

__all__ = [
    "Node", "Const", "Named", "Var", "Neg", "BinOp", "Func", "FuncExpr",
    "ParseError", "UnknownIdentifier", "DomainError", "ShapeReport",
    "parse", "evaluate", "evaluate_array", "differentiate", "to_string",
    "check_shape", "SHAPE_TOL", "SHAPE_GRID",
]

SHAPE_TOL = 1e-9
SHAPE_GRID = 64

FUNCTIONS = ("ln", "exp", "sqrt", "recip")
CONSTANTS = {"e": math.e, "pi": math.pi}


class ParseError(ValueError):
    """Syntax error at a byte offset of the source text."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownIdentifier(ParseError):
    pass


class DomainError(ValueError):
    """Evaluation left the natural domain of ``node``."""

    def __init__(self, message: str, node: "Node"):
        super().__init__(f"{message} in {to_string(node)}")
        self.node = node


# --------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Named:
    name: str

    @property
    def value(self) -> float:
        return CONSTANTS[self.name]


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Func:
    name: str  # one of FUNCTIONS
    arg: "Node"


Node = Union[Const, Named, Var, Neg, BinOp, Func]
X = Var()
ZERO = Const(0.0)
ONE = Const(1.0)


@dataclass(frozen=True)
class FuncExpr:
    """A parsed function of ``x``; ``text`` is the canonical printed form."""

    root: Node

    @property
    def text(self) -> str:
        return to_string(self.root)

    def __call__(self, x):
        return evaluate(self, x)

    def __str__(self) -> str:
        return self.text


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<id>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Split ``text`` into (kind, value, byte_offset) triples."""

    def offset(i: int) -> int:
        return len(text[:i].encode("utf-8"))

    tokens = []
    pos = 0
    while text[pos:].strip():
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", offset(bad))
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), offset(m.start(kind))))
        pos = m.end()
    tokens.append(("end", "", offset(len(text))))
    return tokens


class _Parser:
    # expr  := term (("+"|"-") term)*
    # term  := unary (("*"|"/") unary)*
    # unary := "-" unary | power
    # power := primary ("^" unary)?

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, off = self.take()
        if val != value or kind != "op":
            found = "end of input" if kind == "end" else repr(val)
            raise ParseError(f"expected {value!r}, found {found}", off)

    def parse(self) -> Node:
        node = self.expr()
        kind, val, off = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {val!r}", off)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.peek()[1] == "-" and self.peek()[0] == "op":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.primary()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            return BinOp("^", base, self.unary())
        return base

    def primary(self) -> Node:
        kind, val, off = self.take()
        if kind == "num":
            return Const(float(val))
        if kind == "id":
            if val == "x":
                return X
            if val in CONSTANTS:
                return Named(val)
            if val in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Func(val, arg)
            raise UnknownIdentifier(f"unknown identifier {val!r}", off)
        if val == "(":
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"unexpected {found}", off)


def parse(text: str) -> FuncExpr:
    if not text or not text.strip():
        raise ParseError("empty expression", 0)
    return FuncExpr(_Parser(text).parse())


# --------------------------------------------------------------------------
# printing

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def _fmt_const(v: float) -> str:
    if v.is_integer() and abs(v) < 1e16:
        s = str(int(v))
    else:
        s = repr(v)
    return f"({s})" if v < 0 or s.startswith("-") else s


def _prec(node: Node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return _PREC["neg"]
    return 5


def to_string(node) -> str:
    if isinstance(node, FuncExpr):
        node = node.root
    if isinstance(node, Const):
        return _fmt_const(node.value)
    if isinstance(node, Named):
        return node.name
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Func):
        return f"{node.name}({to_string(node.arg)})"
    if isinstance(node, Neg):
        inner = to_string(node.arg)
        return f"-({inner})" if _prec(node.arg) < _PREC["neg"] else f"-{inner}"
    p = _PREC[node.op]
    left, right = to_string(node.left), to_string(node.right)
    lp, rp = _prec(node.left), _prec(node.right)
    if node.op == "^":
        # right-associative; a negated base must be bracketed
        if lp <= p:
            left = f"({left})"
        if rp < _PREC["neg"]:
            right = f"({right})"
        return f"{left}^{right}"
    # left-associative: an equal-precedence right operand keeps its brackets
    if lp < p or isinstance(node.left, Neg):
        left = f"({left})"
    if rp <= p or isinstance(node.right, Neg):
        right = f"({right})"
    return f"{left} {node.op} {right}"


# --------------------------------------------------------------------------
# evaluation


def _int_exponent(node: Node):
    if isinstance(node, Const) and node.value.is_integer() and abs(node.value) <= 64:
        return int(node.value)
    return None


def _eval(node: Node, x: np.ndarray) -> np.ndarray:
    if isinstance(node, Var):
        return x
    if isinstance(node, (Const, Named)):
        return np.full_like(x, node.value)
    if isinstance(node, Neg):
        return -_eval(node.arg, x)
    if isinstance(node, Func):
        u = _eval(node.arg, x)
        if node.name == "ln":
            if np.any(u <= 0):
                raise DomainError("ln of non-positive value", node)
            return np.log(u)
        if node.name == "sqrt":
            if np.any(u < 0):
                raise DomainError("sqrt of negative value", node)
            return np.sqrt(u)
        if node.name == "recip":
            if np.any(u == 0):
                raise DomainError("division by zero", node)
            return 1.0 / u
        with np.errstate(over="ignore"):
            return np.exp(u)
    left = _eval(node.left, x)
    if node.op == "^":
        n = _int_exponent(node.right)
        if n is not None:
            if n < 0 and np.any(left == 0):
                raise DomainError("division by zero", node)
            if n == 0:
                return np.ones_like(left)
            # repeated squaring keeps integer powers exact for negative bases
            out = _ipow(left, abs(n))
            return 1.0 / out if n < 0 else out
        right = _eval(node.right, x)
        if np.any((left < 0) | ((left == 0) & (right < 0))):
            raise DomainError("power of non-positive base", node)
        with np.errstate(over="ignore"):
            return np.power(left, right)
    right = _eval(node.right, x)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if np.any(right == 0):
        raise DomainError("division by zero", node)
    return left / right


def _ipow(base: np.ndarray, n: int) -> np.ndarray:
    result = None
    square = base
    while n:
        if n & 1:
            result = square if result is None else result * square
        n >>= 1
        if n:
            square = square * square
    return result


def evaluate_array(f, xs) -> np.ndarray:
    """Evaluate ``f`` at every point of ``xs``; raises DomainError on any bad point."""
    root = f.root if isinstance(f, FuncExpr) else f
    xs = np.asarray(xs, dtype=float)
    return _eval(root, xs)


def evaluate(f, x: float) -> float:
    return float(evaluate_array(f, np.array([x], dtype=float))[0])


# --------------------------------------------------------------------------
# differentiation with conservative simplification


def _is(node: Node, v: float) -> bool:
    return isinstance(node, Const) and node.value == v


def _add(u: Node, v: Node) -> Node:
    if _is(u, 0):
        return v
    if _is(v, 0):
        return u
    if isinstance(u, Const) and isinstance(v, Const):
        return Const(u.value + v.value)
    return BinOp("+", u, v)


def _sub(u: Node, v: Node) -> Node:
    if _is(v, 0):
        return u
    if _is(u, 0):
        return _neg(v)
    if isinstance(u, Const) and isinstance(v, Const):
        return Const(u.value - v.value)
    return BinOp("-", u, v)


def _neg(u: Node) -> Node:
    if isinstance(u, Const):
        return Const(-u.value)
    if isinstance(u, Neg):
        return u.arg
    return Neg(u)


def _mul(u: Node, v: Node) -> Node:
    if _is(u, 0) or _is(v, 0):
        return ZERO
    if _is(u, 1):
        return v
    if _is(v, 1):
        return u
    if isinstance(u, Const) and isinstance(v, Const):
        return Const(u.value * v.value)
    if isinstance(u, Neg):
        return _neg(_mul(u.arg, v))
    if isinstance(v, Neg):
        return _neg(_mul(u, v.arg))
    return BinOp("*", u, v)


def _div(u: Node, v: Node) -> Node:
    if _is(u, 0):
        return ZERO
    if _is(v, 1):
        return u
    return BinOp("/", u, v)


def _pow(u: Node, v: Node) -> Node:
    if _is(v, 0):
        return ONE
    if _is(v, 1):
        return u
    return BinOp("^", u, v)


def _is_const(node: Node) -> bool:
    if isinstance(node, (Const, Named)):
        return True
    if isinstance(node, Var):
        return False
    if isinstance(node, (Neg, Func)):
        return _is_const(node.arg)
    return _is_const(node.left) and _is_const(node.right)


def _d(node: Node) -> Node:
    if _is_const(node):
        return ZERO
    if isinstance(node, Var):
        return ONE
    if isinstance(node, Neg):
        return _neg(_d(node.arg))
    if isinstance(node, Func):
        u, du = node.arg, _d(node.arg)
        if node.name == "ln":
            return _div(du, u)
        if node.name == "exp":
            return _mul(node, du)
        if node.name == "sqrt":
            return _div(du, _mul(Const(2.0), node))
        # recip
        return _neg(_div(du, _pow(u, Const(2.0))))
    u, v = node.left, node.right
    if node.op == "+":
        return _add(_d(u), _d(v))
    if node.op == "-":
        return _sub(_d(u), _d(v))
    if node.op == "*":
        return _add(_mul(_d(u), v), _mul(u, _d(v)))
    if node.op == "/":
        if _is_const(v):
            return _div(_d(u), v)
        return _div(_sub(_mul(_d(u), v), _mul(u, _d(v))), _pow(v, Const(2.0)))
    # power
    if isinstance(v, Const):
        return _mul(_mul(v, _pow(u, Const(v.value - 1.0))), _d(u))
    if _is_const(u):
        return _mul(_mul(node, Func("ln", u)), _d(v))
    # general u^v = exp(v ln u)
    return _mul(node, _add(_mul(_d(v), Func("ln", u)), _div(_mul(v, _d(u)), u)))


def differentiate(f: FuncExpr) -> FuncExpr:
    return FuncExpr(_d(f.root))


# --------------------------------------------------------------------------
# convexity / concavity by midpoint-chord sampling


@dataclass(frozen=True)
class ShapeReport:
    mode: str
    grid_size: int
    max_violation: float
    passed: bool


def check_shape(
    g: Union[FuncExpr, Callable[[np.ndarray], np.ndarray]],
    iv,
    mode: str = "convex",
    grid: int = SHAPE_GRID,
    tol: float = SHAPE_TOL,
) -> ShapeReport:
    """Midpoint-chord test on every pair of a uniform ``grid`` over ``[a, b]``.

    For a uniform grid the midpoint of points ``i`` and ``j`` is node ``i + j``
    of the half-step grid, so ``g`` is sampled once on ``2*grid - 1`` points.
    ``g`` may be a FuncExpr or any vectorised callable.
    """
    if mode not in ("convex", "concave"):
        raise ValueError(f"mode must be 'convex' or 'concave', got {mode!r}")
    if grid < 8:
        raise ValueError("grid must be at least 8")
    a, b = iv
    xs = np.linspace(a, b, 2 * grid - 1)
    if isinstance(g, FuncExpr):
        vals = evaluate_array(g, xs)
    else:
        vals = np.asarray(g(xs), dtype=float)
    nodes = vals[::2]
    i, j = np.triu_indices(grid, k=1)
    chord = (nodes[i] + nodes[j]) / 2
    mid = vals[i + j]
    gap = mid - chord if mode == "convex" else chord - mid
    worst = max(float(np.max(gap)), 0.0)
    if not np.isfinite(worst):
        worst = math.inf
    return ShapeReport(mode, grid, worst, worst <= tol)
