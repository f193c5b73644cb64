"""Expression language for scalar components of parametric curves.

Grammar (EBNF, whitespace-insensitive)::

    expr     = term , { ("+" | "-") , term } ;
    term     = factor , { ("*" | "/") , factor } ;
    factor   = "-" , factor | power ;
    power    = atom , [ "^" , integer ] ;
    atom     = number | "s" | "pi" | function , "(" , expr , ")" | "(" , expr , ")" ;
    function = "sqrt" | "sin" | "cos" | "sinh" | "cosh" | "tanh" | "abs" ;

Precedence is ^  >  unary -  >  * /  >  + -, with left associativity for
binary - and /.  Exponents must be integer literals and there is no
implicit multiplication ("2s" is a syntax error).  Parsed trees are
immutable and evaluate either to floats or to truncated Taylor jets.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import jets
from .jets import Jet, JetDomainError
from .minkowski import MVec3

FUNCTIONS = ("sqrt", "sin", "cos", "sinh", "cosh", "tanh", "abs")

MAX_JET_ORDER = jets.MAX_ORDER


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position


class EvalDomainError(ValueError):
    """Evaluation left the domain of an elementary function."""


# -- abstract syntax ---------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Pi:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "CurveExpr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "CurveExpr"
    right: "CurveExpr"


@dataclass(frozen=True)
class Pow:
    base: "CurveExpr"
    exponent: int


@dataclass(frozen=True)
class Call:
    name: str
    arg: "CurveExpr"


CurveExpr = Num | Var | Pi | Neg | BinOp | Pow | Call


# -- tokenizer ---------------------------------------------------------


@dataclass(frozen=True)
class _Token:
    kind: str  # "num", "ident", an operator character, or "eof"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    out = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i < n and text[i] == ".":
                i += 1
                while i < n and text[i].isdigit():
                    i += 1
            if i < n and text[i] in "eE":
                j = i + 1
                if j < n and text[j] in "+-":
                    j += 1
                if j < n and text[j].isdigit():
                    i = j
                    while i < n and text[i].isdigit():
                        i += 1
            out.append(_Token("num", text[start:i], start))
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            out.append(_Token("ident", text[start:i], start))
            continue
        if ch in "+-*/^()":
            out.append(_Token(ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    out.append(_Token("eof", "", n))
    return out


# -- parser ------------------------------------------------------------


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expr(self) -> CurveExpr:
        node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> CurveExpr:
        node = self.factor()
        while self.peek().kind in ("*", "/"):
            op = self.advance().kind
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> CurveExpr:
        if self.peek().kind == "-":
            self.advance()
            return Neg(self.factor())
        return self.power()

    def power(self) -> CurveExpr:
        base = self.atom()
        if self.peek().kind == "^":
            self.advance()
            sign = 1
            if self.peek().kind == "-":
                self.advance()
                sign = -1
            tok = self.peek()
            if tok.kind != "num" or not tok.text.isdigit():
                raise ParseError("exponent must be an integer literal", tok.pos)
            self.advance()
            return Pow(base, sign * int(tok.text))
        return base

    def atom(self) -> CurveExpr:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return Num(float(tok.text))
        if tok.kind == "ident":
            self.advance()
            name = tok.text
            if name == "s":
                return Var()
            if name == "pi":
                return Pi()
            if self.peek().kind == "(":
                if name not in FUNCTIONS:
                    raise ParseError(f"unknown function {name!r}", tok.pos)
                self.advance()
                arg = self.expr()
                closing = self.peek()
                if closing.kind != ")":
                    raise ParseError("expected ')'", closing.pos)
                self.advance()
                return Call(name, arg)
            raise ParseError(f"unknown identifier {name!r}", tok.pos)
        if tok.kind == "(":
            self.advance()
            node = self.expr()
            closing = self.peek()
            if closing.kind != ")":
                raise ParseError("expected ')'", closing.pos)
            self.advance()
            return node
        raise ParseError("expected operand", tok.pos)


def parse(text: str) -> CurveExpr:
    parser = _Parser(_tokenize(text))
    node = parser.expr()
    trailing = parser.peek()
    if trailing.kind != "eof":
        raise ParseError(f"unexpected token {trailing.text!r}", trailing.pos)
    return node


# -- evaluation --------------------------------------------------------

_PI = 3.141592653589793


def _eval(node: CurveExpr, s):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return s
    if isinstance(node, Pi):
        return _PI
    if isinstance(node, Neg):
        return -_eval(node.arg, s)
    if isinstance(node, BinOp):
        left = _eval(node.left, s)
        right = _eval(node.right, s)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        try:
            return left / right
        except ZeroDivisionError:
            raise EvalDomainError("division by zero") from None
    if isinstance(node, Pow):
        base = _eval(node.base, s)
        try:
            return jets.powi(base, node.exponent)
        except ZeroDivisionError:
            raise EvalDomainError(f"zero raised to the negative power {node.exponent}") from None
    if isinstance(node, Call):
        arg = _eval(node.arg, s)
        if node.name == "abs":
            if isinstance(arg, Jet):
                raise EvalDomainError("abs is not differentiable and cannot be evaluated on jets")
            return abs(arg)
        try:
            return jets.ELEMENTARY[node.name](arg)
        except JetDomainError as exc:
            raise EvalDomainError(str(exc)) from None
        except ValueError:
            raise EvalDomainError(f"domain error: {node.name}({arg!r})") from None
    raise TypeError(f"not an expression node: {node!r}")


def eval_scalar(e: CurveExpr, s: float) -> float:
    return _eval(e, float(s))


def eval_jet(e: CurveExpr, s0: float, order: int) -> Jet:
    if order < 0:
        raise ValueError("jet order must be non-negative")
    if order > MAX_JET_ORDER:
        raise ValueError(f"jet order {order} exceeds the configured maximum {MAX_JET_ORDER}")
    result = _eval(e, Jet.variable(float(s0), max(order, 1)))
    if not isinstance(result, Jet):
        result = Jet.constant(result, float(s0), max(order, 1))
    return result.truncate(order)


def to_text(e: CurveExpr) -> str:
    """Canonical fully parenthesized rendering; re-parses to an equal tree."""
    if isinstance(e, Num):
        return repr(e.value)
    if isinstance(e, Var):
        return "s"
    if isinstance(e, Pi):
        return "pi"
    if isinstance(e, Neg):
        return f"(-{to_text(e.arg)})"
    if isinstance(e, BinOp):
        return f"({to_text(e.left)}{e.op}{to_text(e.right)})"
    if isinstance(e, Pow):
        return f"({to_text(e.base)}^{e.exponent})"
    if isinstance(e, Call):
        return f"{e.name}({to_text(e.arg)})"
    raise TypeError(f"not an expression node: {e!r}")


# -- parametric curves -------------------------------------------------


@dataclass(frozen=True)
class ParametricCurve:
    """Three expression components on a closed parameter interval.

    `dual_components`, when present, define the unit spacelike dual curve
    that makes the pair Legendrian; otherwise the dual has to be derived
    numerically (see frontal.AutoDual).
    """

    name: str
    components: tuple[CurveExpr, CurveExpr, CurveExpr]
    domain: tuple[float, float]
    dual_components: tuple[CurveExpr, CurveExpr, CurveExpr] | None = None
    samples: int = 1000

    def __post_init__(self):
        a, b = self.domain
        if not a < b:
            raise ValueError(f"degenerate domain [{a!r}, {b!r}]")
        if self.samples < 2:
            raise ValueError("need at least 2 samples")

    def grid(self, n: int | None = None) -> list[float]:
        n = n or self.samples
        a, b = self.domain
        step = (b - a) / (n - 1)
        pts = [a + i * step for i in range(n)]
        pts[-1] = b
        return pts

    def point(self, s: float) -> MVec3:
        c = self.components
        return MVec3(eval_scalar(c[0], s), eval_scalar(c[1], s), eval_scalar(c[2], s))

    def point_jet(self, s0: float, order: int) -> MVec3:
        c = self.components
        return MVec3(eval_jet(c[0], s0, order), eval_jet(c[1], s0, order), eval_jet(c[2], s0, order))

    def has_dual(self) -> bool:
        return self.dual_components is not None

    def dual_point(self, s: float) -> MVec3:
        if self.dual_components is None:
            raise ValueError(f"curve {self.name!r} has no explicit dual components")
        c = self.dual_components
        return MVec3(eval_scalar(c[0], s), eval_scalar(c[1], s), eval_scalar(c[2], s))

    def dual_jet(self, s0: float, order: int) -> MVec3:
        if self.dual_components is None:
            raise ValueError(f"curve {self.name!r} has no explicit dual components")
        c = self.dual_components
        return MVec3(eval_jet(c[0], s0, order), eval_jet(c[1], s0, order), eval_jet(c[2], s0, order))
