"""Parametrized germs ``(x, s) -> (h_s(x), s)`` at (0, 0), with s in {0} U {1/n}.

Germs are expression trees over ``x``, ``s``, rational constants, ``+ - * /``,
``min``, ``max`` and ``abs``, evaluated exactly with :class:`fractions.Fraction`.
Composition is substitution for ``x``; inversion is supported for affine-in-x
wrappers around ``x`` and for min/max of increasing invertible pieces.
"""
from __future__ import annotations

import ast
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, ParseError, StructureError, UnsupportedInverse
from .words import Word
from ._validation import as_rational, check_s_value


# --- expression trees ------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str  # "x" or "s"


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Func:
    name: str  # min, max, abs
    args: tuple


X, S = Var("x"), Var("s")
ZERO, ONE = Const(Fraction(0)), Const(Fraction(1))


def evaluate(e, x: Fraction, s: Fraction) -> Fraction:
    if isinstance(e, Var):
        return x if e.name == "x" else s
    if isinstance(e, Const):
        return e.value
    if isinstance(e, BinOp):
        a, b = evaluate(e.left, x, s), evaluate(e.right, x, s)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b
    if isinstance(e, Neg):
        return -evaluate(e.arg, x, s)
    if isinstance(e, Func):
        vals = [evaluate(a, x, s) for a in e.args]
        return {"min": min, "max": max}[e.name](vals) if e.name != "abs" else abs(vals[0])
    raise StructureError(f"not an expression node: {e!r}")


def has_x(e) -> bool:
    if isinstance(e, Var):
        return e.name == "x"
    if isinstance(e, Const):
        return False
    if isinstance(e, BinOp):
        return has_x(e.left) or has_x(e.right)
    if isinstance(e, Neg):
        return has_x(e.arg)
    return any(has_x(a) for a in e.args)


def substitute(e, repl):
    """Replace every ``x`` in ``e`` by the tree ``repl``."""
    if isinstance(e, Var):
        return repl if e.name == "x" else e
    if isinstance(e, Const):
        return e
    if isinstance(e, BinOp):
        return BinOp(e.op, substitute(e.left, repl), substitute(e.right, repl))
    if isinstance(e, Neg):
        return Neg(substitute(e.arg, repl))
    return Func(e.name, tuple(substitute(a, repl) for a in e.args))


def to_text(e) -> str:
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Const):
        v = e.value
        body = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        return body if v >= 0 and v.denominator == 1 else f"({body})"
    if isinstance(e, BinOp):
        return f"({to_text(e.left)} {e.op} {to_text(e.right)})"
    if isinstance(e, Neg):
        return f"(-{to_text(e.arg)})"
    return f"{e.name}({', '.join(to_text(a) for a in e.args)})"


def _linear_terms(e, coef: Fraction, out: dict) -> None:
    """Accumulate ``coef * e`` as rational multiples of non-linear atoms (None = constant)."""
    if isinstance(e, Const):
        out[None] = out.get(None, Fraction(0)) + coef * e.value
    elif isinstance(e, Neg):
        _linear_terms(e.arg, -coef, out)
    elif isinstance(e, BinOp) and e.op in "+-":
        _linear_terms(e.left, coef, out)
        _linear_terms(e.right, coef if e.op == "+" else -coef, out)
    elif isinstance(e, BinOp) and e.op == "*" and isinstance(e.left, Const):
        _linear_terms(e.right, coef * e.left.value, out)
    elif isinstance(e, BinOp) and e.op == "*" and isinstance(e.right, Const):
        _linear_terms(e.left, coef * e.right.value, out)
    elif isinstance(e, BinOp) and e.op == "/" and isinstance(e.right, Const) and e.right.value != 0:
        _linear_terms(e.left, coef / e.right.value, out)
    else:
        out[e] = out.get(e, Fraction(0)) + coef


def _collect(e):
    """Rebuild a linear combination with like terms merged: x first, then s, then the rest."""
    terms = {}
    _linear_terms(e, Fraction(1), terms)
    const = terms.pop(None, Fraction(0))
    rank = {X: (0, ""), S: (1, "")}
    atoms = sorted((a for a, c in terms.items() if c), key=lambda a: rank.get(a, (2, to_text(a))))
    parts = [(terms[a], a) for a in atoms] + ([(const, None)] if const or not atoms else [])
    out = None
    for c, a in parts:
        mag = abs(c) if out is not None else c
        if a is None:
            piece = Const(mag)
        elif mag == 1:
            piece = a
        elif mag == -1:
            piece = Neg(a)
        else:
            piece = BinOp("*", Const(mag), a)
        out = piece if out is None else BinOp("+" if c > 0 else "-", out, piece)
    return out


def simplify(e):
    """Fold constants, drop neutral elements and merge like terms of linear combinations."""
    if isinstance(e, BinOp):
        l, r = simplify(e.left), simplify(e.right)
        if isinstance(l, Const) and isinstance(r, Const) and not (e.op == "/" and r.value == 0):
            return Const(evaluate(BinOp(e.op, l, r), Fraction(0), Fraction(0)))
        if e.op == "*" and (l == ZERO or r == ZERO):
            return ZERO
        if e.op == "*" and l == ONE:
            return r
        if e.op in "*/" and r == ONE:
            return l
        out = BinOp(e.op, l, r)
        if e.op in "+-" or (e.op == "*" and isinstance(l, Const)) or (
            e.op in "*/" and isinstance(r, Const) and r.value != 0
        ):
            return _collect(out)
        return out
    if isinstance(e, Neg):
        a = simplify(e.arg)
        if isinstance(a, Const):
            return Const(-a.value)
        return _collect(Neg(a))
    if isinstance(e, Func):
        args = tuple(simplify(a) for a in e.args)
        if all(isinstance(a, Const) for a in args):
            return Const(evaluate(Func(e.name, args), Fraction(0), Fraction(0)))
        return Func(e.name, args)
    return e


_BINOPS = {ast.Add: "+", ast.Sub: "-", ast.Mult: "*", ast.Div: "/"}


def parse_expr(text: str):
    """Parse the germ expression grammar (a subset of Python expression syntax)."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"syntax error in expression {text!r}", 1, exc.offset) from None

    def conv(node):
        col = getattr(node, "col_offset", 0) + 1
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return BinOp(_BINOPS[type(node.op)], conv(node.left), conv(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            inner = conv(node.operand)
            return Neg(inner) if isinstance(node.op, ast.USub) else inner
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return Const(Fraction(node.value))
        if isinstance(node, ast.Name) and node.id in ("x", "s"):
            return Var(node.id)
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
            name, args = node.func.id, [conv(a) for a in node.args]
            if name == "abs" and len(args) == 1:
                return Func("abs", tuple(args))
            if name in ("min", "max") and len(args) >= 2:
                out = args[0]
                for a in args[1:]:
                    out = Func(name, (out, a))
                return out
            raise ParseError(f"unsupported function call `{ast.unparse(node)}`", 1, col)
        if isinstance(node, ast.Name):
            raise ParseError(f"unknown name `{node.id}` (expressions use x and s)", 1, col)
        raise ParseError(f"unsupported syntax `{ast.unparse(node)}`", 1, col)

    return conv(tree.body)


# --- inversion -------------------------------------------------------------------

def _affine_parts(e):
    """``(alpha, beta)`` x-free trees with e == alpha*x + beta, or None."""
    if not has_x(e):
        return ZERO, e
    if isinstance(e, Var):
        return ONE, ZERO
    if isinstance(e, Neg):
        ab = _affine_parts(e.arg)
        return None if ab is None else (Neg(ab[0]), Neg(ab[1]))
    if isinstance(e, BinOp):
        if e.op in "+-":
            l, r = _affine_parts(e.left), _affine_parts(e.right)
            if l is None or r is None:
                return None
            return BinOp(e.op, l[0], r[0]), BinOp(e.op, l[1], r[1])
        if e.op == "*":
            if has_x(e.left) and has_x(e.right):
                return None
            c, f = (e.left, e.right) if not has_x(e.left) else (e.right, e.left)
            ab = _affine_parts(f)
            return None if ab is None else (BinOp("*", c, ab[0]), BinOp("*", c, ab[1]))
        if e.op == "/" and not has_x(e.right):
            ab = _affine_parts(e.left)
            return None if ab is None else (BinOp("/", ab[0], e.right), BinOp("/", ab[1], e.right))
    return None


def invert_expr(e):
    """Closed-form inverse of ``x -> e(x, s)`` for each fixed s."""
    if not has_x(e):
        raise UnsupportedInverse("expression does not depend on x")
    ab = _affine_parts(e)
    if ab is not None:
        alpha, beta = ab
        return BinOp("/", BinOp("-", X, beta), alpha)
    if isinstance(e, Neg):
        return substitute(invert_expr(e.arg), Neg(X))
    if isinstance(e, BinOp):
        l, r = has_x(e.left), has_x(e.right)
        if l and not r:
            undo = {"+": BinOp("-", X, e.right), "-": BinOp("+", X, e.right),
                    "*": BinOp("/", X, e.right), "/": BinOp("*", X, e.right)}[e.op]
            return substitute(invert_expr(e.left), undo)
        if r and not l and e.op in "+-*":
            undo = {"+": BinOp("-", X, e.left), "-": BinOp("-", e.left, X), "*": BinOp("/", X, e.left)}[e.op]
            return substitute(invert_expr(e.right), undo)
    if isinstance(e, Func) and e.name in ("min", "max") and all(has_x(a) for a in e.args):
        # for increasing pieces: max(f, g)^-1 = min(f^-1, g^-1) and vice versa
        dual = "max" if e.name == "min" else "min"
        return Func(dual, tuple(invert_expr(a) for a in e.args))
    raise UnsupportedInverse(f"no closed-form inverse for {to_text(e)}")


# --- germs -----------------------------------------------------------------------

def grid_x(m: int) -> list:
    """x-samples of shell m: 0, then +-k/8 * 2^-m for k = 8, 7, 6, 5."""
    scale = Fraction(1, 2 ** m)
    out = [Fraction(0)]
    for k in range(8, 4, -1):
        out += [scale * Fraction(k, 8), -scale * Fraction(k, 8)]
    return out


def grid_s(m: int) -> list:
    """s-samples of shell m: 1/n for 2^(m-1) < n <= 2^m (smallest first), then 0."""
    lo = 0 if m == 1 else 2 ** (m - 1)
    return [Fraction(1, n) for n in range(2 ** m, lo, -1)] + [Fraction(0)]


def full_grid(depth: int, rho: Fraction) -> list:
    """Every sample point up to ``depth`` with |x| < rho, deduplicated, shells in order."""
    pts, seen = [], set()
    for m in range(1, depth + 1):
        scale = Fraction(1, 2 ** m)
        xs = [Fraction(0)] + [sgn * scale * Fraction(k, 8) for k in range(1, 9) for sgn in (1, -1)]
        ss = [Fraction(0)] + [Fraction(1, n) for n in range(1, 2 ** m + 1)]
        for x in xs:
            if abs(x) >= rho:
                continue
            for s in ss:
                if (x, s) not in seen:
                    seen.add((x, s))
                    pts.append((x, s))
    return pts


@dataclass(frozen=True)
class ParamGerm:
    expr: object
    rho: Fraction = Fraction(1)
    name: str = ""

    def __post_init__(self):
        if isinstance(self.expr, str):
            object.__setattr__(self, "expr", parse_expr(self.expr))
        object.__setattr__(self, "rho", as_rational(self.rho))
        if self.rho <= 0:
            raise StructureError("neighborhood radius must be positive")

    @property
    def text(self) -> str:
        return to_text(self.expr)

    def __call__(self, x, s) -> Fraction:
        return eval_param_germ(self, x, s)

    def validate(self, depth: int = 3) -> "ParamGerm":
        """Check h_0(0) = 0 and strict monotonicity in x on the sample grid."""
        try:
            if evaluate(self.expr, Fraction(0), Fraction(0)) != 0:
                raise StructureError(f"germ {self.name or self.text} does not fix (0, 0)")
            pts = full_grid(depth, self.rho)
            for s in sorted({s for _, s in pts}):
                xs = sorted({x for x, t in pts if t == s})
                ys = [evaluate(self.expr, x, s) for x in xs]
                if any(a >= b for a, b in zip(ys, ys[1:])):
                    raise StructureError(f"germ {self.name or self.text} is not increasing in x at s = {s}")
        except ZeroDivisionError:
            raise StructureError(f"germ {self.name or self.text} divides by zero on the sample grid") from None
        return self


IDENTITY_GERM = ParamGerm(X, Fraction(1), "e")


def eval_param_germ(f: ParamGerm, x, s) -> Fraction:
    x, s = as_rational(x), check_s_value(s)
    if abs(x) >= f.rho:
        raise DomainError(f"|x| = {abs(x)} is outside the neighborhood radius {f.rho}")
    try:
        return evaluate(f.expr, x, s)
    except ZeroDivisionError:
        raise DomainError(f"division by zero evaluating {f.text} at ({x}, {s})") from None


def compose_param_germ(f: ParamGerm, g: ParamGerm) -> ParamGerm:
    """``f o g``: apply g, then f."""
    return ParamGerm(simplify(substitute(f.expr, g.expr)), min(f.rho, g.rho), f"{f.name}*{g.name}" if f.name else "")


def invert_param_germ(f: ParamGerm, check_depth: int = 2) -> ParamGerm:
    inv = ParamGerm(simplify(invert_expr(f.expr)), f.rho, f"{f.name}^-1" if f.name else "")
    # guard against pieces that were not increasing
    for x, s in full_grid(check_depth, f.rho):
        try:
            if evaluate(inv.expr, evaluate(f.expr, x, s), s) != x:
                raise UnsupportedInverse(f"inverse of {f.text} fails to round-trip at ({x}, {s})")
        except ZeroDivisionError:
            raise UnsupportedInverse(f"inverse of {f.text} divides by zero at ({x}, {s})") from None
    return inv


class GermFamily:
    """Named germs with lazily built inverses; words over them are :class:`Word`s."""

    def __init__(self, germs: Sequence[ParamGerm]):
        self.germs = list(germs)
        self._inv = {}

    @property
    def names(self):
        return [g.name or f"f{i + 1}" for i, g in enumerate(self.germs)]

    def letter(self, i: int, sign: int) -> ParamGerm:
        if sign > 0:
            return self.germs[i]
        if i not in self._inv:
            self._inv[i] = invert_param_germ(self.germs[i])
        return self._inv[i]

    def eval_word(self, w: Word, x, s) -> Fraction:
        """Apply the letters of ``w`` right to left; only the base point is range-checked."""
        x, s = as_rational(x), check_s_value(s)
        rho = min((g.rho for g in self.germs), default=Fraction(1))
        if abs(x) >= rho:
            raise DomainError(f"|x| = {abs(x)} is outside the neighborhood radius {rho}")
        val = x
        for letter in reversed(w.expanded()):
            f = self.letter(abs(letter) - 1, letter)
            try:
                val = evaluate(f.expr, val, s)
            except ZeroDivisionError:
                raise DomainError(f"division by zero at ({x}, {s})") from None
        return val

    def word(self, text: str) -> Word:
        from .textio import parse_word
        from .words import Presentation

        return parse_word(text, Presentation(tuple(self.names)))

    def fmt(self, w: Word) -> str:
        return w.format(self.names)


# --- germ files ------------------------------------------------------------------

def germs_from_json(doc) -> list:
    items = doc["germs"] if isinstance(doc, dict) else doc
    out = []
    for item in items:
        rho = item.get("rho", "1")
        out.append(ParamGerm(parse_expr(str(item["expr"])), as_rational(str(rho)), item["name"]).validate())
    return out


def germs_to_json(germs: Sequence[ParamGerm]) -> dict:
    return {
        "format_version": 1,
        "germs": [{"name": g.name, "expr": g.text, "rho": f"{g.rho.numerator}/{g.rho.denominator}"} for g in germs],
    }


def load_germs(path) -> list:
    with open(path, encoding="utf-8") as fh:
        return germs_from_json(json.load(fh))
