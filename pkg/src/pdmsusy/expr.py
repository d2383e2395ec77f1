"""Closed-form expressions in one variable z: parsing, exact differentiation, evaluation.

The node set is deliberately small -- constants, the variable z, arithmetic,
powers with constant exponent, and the unary functions sqrt/exp/ln/sin/cos/atan.
That is enough to write every mass profile, superpotential, and potential this
package works with, while keeping differentiation exact (no symbolic integration,
no general rewriting: the only simplification is constant folding).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Expression", "Const", "Var", "Unary", "Binary", "Pow",
    "parse", "to_text", "differentiate", "evaluate", "evaluate_grid",
    "add", "sub", "mul", "div", "neg", "pow_", "unary", "const",
    "ExpressionError", "ParseError", "UnknownIdentifierError", "DomainError",
]

UNARY_OPS = ("neg", "sqrt", "exp", "ln", "sin", "cos", "atan")
BINARY_OPS = ("add", "sub", "mul", "div")
FUNCTION_NAMES = ("sqrt", "exp", "ln", "sin", "cos", "atan")


class ExpressionError(Exception):
    """Base class for everything this module raises on purpose."""


class ParseError(ExpressionError):
    """Malformed input text; `offset` is the byte offset of the offending token."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnknownIdentifierError(ParseError):
    def __init__(self, name: str, offset: int):
        super().__init__(f"unknown identifier '{name}'", offset)
        self.name = name


class DomainError(ExpressionError):
    """Evaluation left the real domain (division by zero, sqrt of a negative, ...)."""

    def __init__(self, z: float, reason: str):
        super().__init__(f"{reason} at z = {z!r}")
        self.z = z
        self.reason = reason


# --- nodes -------------------------------------------------------------------

@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Unary:
    op: str  # one of UNARY_OPS
    arg: "Expression"


@dataclass(frozen=True)
class Binary:
    op: str  # one of BINARY_OPS
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Pow:
    """base^exponent with a *constant* real exponent."""
    base: "Expression"
    exponent: float


Expression = Const | Var | Unary | Binary | Pow

_ZERO = Const(0.0)
_ONE = Const(1.0)


def const(value: float) -> Const:
    return Const(float(value))


# --- smart constructors (constant folding only) -------------------------------

def _is_const(e: Expression, value: float | None = None) -> bool:
    return isinstance(e, Const) and (value is None or e.value == value)


def add(a: Expression, b: Expression) -> Expression:
    if _is_const(a) and _is_const(b):
        return Const(a.value + b.value)
    if _is_const(a, 0.0):
        return b
    if _is_const(b, 0.0):
        return a
    return Binary("add", a, b)


def sub(a: Expression, b: Expression) -> Expression:
    if _is_const(a) and _is_const(b):
        return Const(a.value - b.value)
    if _is_const(b, 0.0):
        return a
    if _is_const(a, 0.0):
        return neg(b)
    return Binary("sub", a, b)


def mul(a: Expression, b: Expression) -> Expression:
    if _is_const(a) and _is_const(b):
        return Const(a.value * b.value)
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return _ZERO
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    return Binary("mul", a, b)


def div(a: Expression, b: Expression) -> Expression:
    if _is_const(a) and _is_const(b) and b.value != 0.0:
        return Const(a.value / b.value)
    if _is_const(a, 0.0) and not _is_const(b, 0.0):
        return _ZERO
    if _is_const(b, 1.0):
        return a
    return Binary("div", a, b)


def neg(a: Expression) -> Expression:
    if _is_const(a):
        return Const(-a.value)
    return Unary("neg", a)


def pow_(base: Expression, exponent: float) -> Expression:
    exponent = float(exponent)
    if exponent == 0.0:
        return _ONE
    if exponent == 1.0:
        return base
    if _is_const(base):
        folded = _apply_pow(base.value, exponent)
        if folded is not None:
            return Const(folded)
    return Pow(base, exponent)


def unary(op: str, a: Expression) -> Expression:
    if op == "neg":
        return neg(a)
    if _is_const(a):
        folded = _apply_unary(op, a.value)
        if folded is not None:
            return Const(folded)
    return Unary(op, a)


def _apply_unary(op: str, x: float) -> float | None:
    """Fold a unary function of a constant; None if outside the real domain."""
    try:
        if op == "sqrt":
            return math.sqrt(x) if x >= 0.0 else None
        if op == "exp":
            y = math.exp(x)
        elif op == "ln":
            if x <= 0.0:
                return None
            y = math.log(x)
        elif op == "sin":
            y = math.sin(x)
        elif op == "cos":
            y = math.cos(x)
        elif op == "atan":
            y = math.atan(x)
        else:
            return None
    except OverflowError:
        return None
    return y if math.isfinite(y) else None


def _apply_pow(base: float, p: float) -> float | None:
    if base == 0.0 and p < 0.0:
        return None
    if base < 0.0 and p != round(p):
        return None
    try:
        y = base ** p
    except (OverflowError, ZeroDivisionError):
        return None
    return y if isinstance(y, float) and math.isfinite(y) else None


# --- parsing -------------------------------------------------------------------

_TOKEN_OPS = "+-*/^(),"


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self):
        """Return (kind, value, offset) without consuming; kind in {num, ident, op, end}."""
        text, n = self.text, len(self.text)
        i = self.pos
        while i < n and text[i].isspace():
            i += 1
        if i >= n:
            return ("end", "", i)
        c = text[i]
        if c in _TOKEN_OPS:
            return ("op", c, i)
        if c.isdigit() or (c == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            while j < n and (text[j].isdigit() or text[j] == "."):
                j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    while k < n and text[k].isdigit():
                        k += 1
                    j = k
            lexeme = text[i:j]
            try:
                value = float(lexeme)
            except ValueError:
                raise ParseError(f"bad numeric literal '{lexeme}'", i) from None
            return ("num", value, i, j)
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            return ("ident", text[i:j], i, j)
        raise ParseError(f"unexpected character {c!r}", i)

    def next(self):
        tok = self.peek()
        self.pos = tok[3] if len(tok) == 4 else (tok[2] + len(str(tok[1])) if tok[0] == "op" else tok[2])
        return tok


class _Parser:
    """Recursive descent; precedence: ^  >  unary -  >  * /  >  + -."""

    def __init__(self, text: str):
        self.toks = _Tokenizer(text)

    def parse(self) -> Expression:
        e = self._additive()
        kind, value, offset = self.toks.peek()[:3]
        if kind != "end":
            raise ParseError(f"unexpected trailing input '{value}'", offset)
        return e

    def _additive(self) -> Expression:
        e = self._multiplicative()
        while True:
            kind, value, _ = self.toks.peek()[:3]
            if kind == "op" and value in "+-":
                self.toks.next()
                rhs = self._multiplicative()
                e = Binary("add" if value == "+" else "sub", e, rhs)
            else:
                return e

    def _multiplicative(self) -> Expression:
        e = self._unary()
        while True:
            kind, value, _ = self.toks.peek()[:3]
            if kind == "op" and value in "*/":
                self.toks.next()
                rhs = self._unary()
                e = Binary("mul" if value == "*" else "div", e, rhs)
            else:
                return e

    def _unary(self) -> Expression:
        kind, value, _ = self.toks.peek()[:3]
        if kind == "op" and value == "-":
            self.toks.next()
            operand = self._unary()
            # a minus sign directly on a literal is the literal's sign
            if isinstance(operand, Const):
                return Const(-operand.value)
            return Unary("neg", operand)
        return self._power()

    def _power(self) -> Expression:
        base = self._atom()
        kind, value, offset = self.toks.peek()[:3]
        if kind == "op" and value == "^":
            self.toks.next()
            exp_offset = self.toks.peek()[2]
            exponent = self._unary()  # right-associative; allows ^-2 and ^(3/2)
            folded = _fold_to_constant(exponent)
            if folded is None:
                raise ParseError("exponent must be a constant", exp_offset)
            return Pow(base, folded)
        return base

    def _atom(self) -> Expression:
        tok = self.toks.next()
        kind, value, offset = tok[:3]
        if kind == "num":
            return Const(value)
        if kind == "ident":
            if value == "z":
                return Var()
            if value in FUNCTION_NAMES:
                self._expect("(")
                arg = self._additive()
                self._expect(")")
                return Unary(value, arg)
            raise UnknownIdentifierError(value, offset)
        if kind == "op" and value == "(":
            e = self._additive()
            self._expect(")")
            return e
        raise ParseError(f"expected a value, found '{value}'" if kind != "end"
                         else "unexpected end of input", offset)

    def _expect(self, op: str):
        kind, value, offset = self.toks.peek()[:3]
        if kind != "op" or value != op:
            raise ParseError(f"expected '{op}'", offset)
        self.toks.next()


def _fold_to_constant(e: Expression) -> float | None:
    """Evaluate a z-free subtree to a float; None if it contains z or leaves the domain."""
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        return None
    if isinstance(e, Unary):
        x = _fold_to_constant(e.arg)
        if x is None:
            return None
        return -x if e.op == "neg" else _apply_unary(e.op, x)
    if isinstance(e, Pow):
        x = _fold_to_constant(e.base)
        return None if x is None else _apply_pow(x, e.exponent)
    a = _fold_to_constant(e.left)
    b = _fold_to_constant(e.right)
    if a is None or b is None:
        return None
    if e.op == "add":
        return a + b
    if e.op == "sub":
        return a - b
    if e.op == "mul":
        return a * b
    return a / b if b != 0.0 else None


def parse(text: str) -> Expression:
    """Parse `text` into an expression tree (no simplification beyond literal signs)."""
    return _Parser(text).parse()


# --- printing ------------------------------------------------------------------

_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 10, 20, 30, 40, 100


def _format_const(value: float) -> str:
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def _prec(e: Expression) -> int:
    if isinstance(e, (Const, Var)):
        return _PREC_ATOM if not (isinstance(e, Const) and e.value < 0) else _PREC_NEG
    if isinstance(e, Pow):
        return _PREC_POW
    if isinstance(e, Unary):
        return _PREC_NEG if e.op == "neg" else _PREC_ATOM
    return _PREC_ADD if e.op in ("add", "sub") else _PREC_MUL


def to_text(e: Expression) -> str:
    """Render to text; parse(to_text(e)) is structurally equal to e."""
    return _render(e, 0)


def _render(e: Expression, context: int) -> str:
    p = _prec(e)
    if isinstance(e, Const):
        s = _format_const(e.value)
    elif isinstance(e, Var):
        s = "z"
    elif isinstance(e, Pow):
        base = _render(e.base, _PREC_POW + 1)  # base binds tighter than ^
        exponent = _format_const(e.exponent)
        if e.exponent < 0:
            exponent = f"({exponent})"
        s = f"{base}^{exponent}"
    elif isinstance(e, Unary):
        if e.op == "neg":
            s = "-" + _render(e.arg, _PREC_NEG + 1)
        else:
            s = f"{e.op}({_render(e.arg, 0)})"
    else:
        symbol = {"add": " + ", "sub": " - ", "mul": "*", "div": "/"}[e.op]
        left = _render(e.left, p)
        right = _render(e.right, p + 1)  # always: keeps the reparse left-associated identically
        if e.op in ("add", "sub") and isinstance(e.right, Const) and e.right.value < 0:
            right = f"({right})"
        s = f"{left}{symbol}{right}"
    return f"({s})" if p < context else s


# --- differentiation -------------------------------------------------------------

def differentiate(e: Expression) -> Expression:
    """Exact derivative d/dz, with constant folding of the result."""
    if isinstance(e, Const):
        return _ZERO
    if isinstance(e, Var):
        return _ONE
    if isinstance(e, Pow):
        du = differentiate(e.base)
        return mul(mul(Const(e.exponent), pow_(e.base, e.exponent - 1.0)), du)
    if isinstance(e, Unary):
        u, du = e.arg, differentiate(e.arg)
        if e.op == "neg":
            return neg(du)
        if e.op == "sqrt":
            return div(du, mul(Const(2.0), unary("sqrt", u)))
        if e.op == "exp":
            return mul(du, unary("exp", u))
        if e.op == "ln":
            return div(du, u)
        if e.op == "sin":
            return mul(du, unary("cos", u))
        if e.op == "cos":
            return neg(mul(du, unary("sin", u)))
        if e.op == "atan":
            return div(du, add(_ONE, mul(u, u)))
        raise ValueError(f"unknown unary op {e.op!r}")
    a, b = e.left, e.right
    da, db = differentiate(a), differentiate(b)
    if e.op == "add":
        return add(da, db)
    if e.op == "sub":
        return sub(da, db)
    if e.op == "mul":
        return add(mul(da, b), mul(a, db))
    if e.op == "div":
        return div(sub(mul(da, b), mul(a, db)), mul(b, b))
    raise ValueError(f"unknown binary op {e.op!r}")


# --- evaluation ------------------------------------------------------------------

def evaluate(e: Expression, z: float) -> float:
    """Evaluate at a point; raises DomainError instead of returning non-finite values."""
    y = _eval(e, float(z))
    if not math.isfinite(y):
        raise DomainError(z, "overflow to a non-finite value")
    return y


def _eval(e: Expression, z: float) -> float:
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        return z
    if isinstance(e, Pow):
        base = _eval(e.base, z)
        y = _apply_pow(base, e.exponent)
        if y is None:
            if base == 0.0 and e.exponent < 0.0:
                raise DomainError(z, "zero raised to a negative power")
            if base < 0.0:
                raise DomainError(z, f"negative base for exponent {e.exponent}")
            raise DomainError(z, "overflow in power")
        return y
    if isinstance(e, Unary):
        x = _eval(e.arg, z)
        if e.op == "neg":
            return -x
        y = _apply_unary(e.op, x)
        if y is None:
            if e.op == "sqrt" and x < 0.0:
                raise DomainError(z, "square root of a negative value")
            if e.op == "ln" and x <= 0.0:
                raise DomainError(z, "logarithm of a non-positive value")
            raise DomainError(z, f"overflow in {e.op}")
        return y
    a = _eval(e.left, z)
    b = _eval(e.right, z)
    if e.op == "add":
        return a + b
    if e.op == "sub":
        return a - b
    if e.op == "mul":
        return a * b
    if b == 0.0:
        raise DomainError(z, "division by zero")
    return a / b


def evaluate_grid(e: Expression, zs: np.ndarray) -> np.ndarray:
    """Vectorized evaluation on an array of points, with the same domain checks.

    On any non-finite or out-of-domain result the first offending point is
    re-evaluated scalar-wise so the error carries the exact z and reason.
    """
    zs = np.asarray(zs, dtype=float)
    with np.errstate(all="ignore"):
        ys, bad = _eval_grid(e, zs)
    if bad is not None:
        evaluate(e, float(zs.flat[bad]))  # raises with the precise reason
        raise DomainError(float(zs.flat[bad]), "non-finite result")
    finite = np.isfinite(ys)
    if not np.all(finite):
        idx = int(np.argmin(finite))
        evaluate(e, float(zs.flat[idx]))
        raise DomainError(float(zs.flat[idx]), "non-finite result")
    return ys


def _eval_grid(e: Expression, zs: np.ndarray):
    """Return (values, first_bad_index_or_None)."""
    if isinstance(e, Const):
        return np.full(zs.shape, e.value), None
    if isinstance(e, Var):
        return zs.copy(), None
    if isinstance(e, Pow):
        base, bad = _eval_grid(e.base, zs)
        if bad is not None:
            return base, bad
        ok = ~((base == 0.0) & (e.exponent < 0.0))
        if e.exponent != round(e.exponent):
            ok &= base >= 0.0
        if not np.all(ok):
            return base, int(np.argmin(ok))
        return np.power(base, e.exponent), None
    if isinstance(e, Unary):
        x, bad = _eval_grid(e.arg, zs)
        if bad is not None:
            return x, bad
        if e.op == "neg":
            return -x, None
        if e.op == "sqrt":
            if np.any(x < 0.0):
                return x, int(np.argmax(x < 0.0))
            return np.sqrt(x), None
        if e.op == "ln":
            if np.any(x <= 0.0):
                return x, int(np.argmax(x <= 0.0))
            return np.log(x), None
        fn = {"exp": np.exp, "sin": np.sin, "cos": np.cos, "atan": np.arctan}[e.op]
        return fn(x), None
    a, bad = _eval_grid(e.left, zs)
    if bad is not None:
        return a, bad
    b, bad = _eval_grid(e.right, zs)
    if bad is not None:
        return b, bad
    if e.op == "add":
        return a + b, None
    if e.op == "sub":
        return a - b, None
    if e.op == "mul":
        return a * b, None
    if np.any(b == 0.0):
        return a, int(np.argmax(b == 0.0))
    return a / b, None
