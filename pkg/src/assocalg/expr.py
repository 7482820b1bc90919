"""Tiny exact expression language for parametrized table cells.

Cells such as ``-b**2/c``, ``(1+alpha)/(1-alpha)`` or ``2*c*cbrt(a**2)-b**2``
are parsed with :mod:`ast` and evaluated over :class:`Scalar` values.  Only
arithmetic, integer powers, names and the exact-root functions ``sqrt`` and
``cbrt`` are accepted.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Mapping, Set

from .exactnum import Scalar, as_scalar

__all__ = ["Expr", "InexactRoot", "exact_root"]


class InexactRoot(ValueError):
    pass


ROOT_FUNCS = {"sqrt": 2, "cbrt": 3}


def _int_root(n: int, k: int):
    if n < 0:
        if k % 2 == 0:
            return None
        r = _int_root(-n, k)
        return None if r is None else -r
    lo, hi = 0, 1
    while hi ** k <= n:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** k == n else None


def exact_root(x: Scalar, k: int) -> Scalar:
    """The real k-th root of a rational scalar, when it is rational."""
    if not x.is_real():
        raise InexactRoot(f"root of non-real scalar {x} is not taken")
    q = x.re
    num = _int_root(q.numerator, k)
    den = _int_root(q.denominator, k)
    if num is None or den is None:
        raise InexactRoot(f"{k}-th root of {x} is not rational")
    return Scalar(Fraction(num, den))


class Expr:
    """A parsed cell expression."""

    __slots__ = ("text", "_tree", "names", "root_names")

    def __init__(self, text: str):
        self.text = text.strip()
        tree = _parse(self.text)
        self._tree = tree
        self.names = frozenset(_names(tree))
        self.root_names = _root_orders(tree)

    def evaluate(self, env: Mapping[str, Scalar]) -> Scalar:
        return _eval(self._tree, env)

    def is_constant(self) -> bool:
        return not self.names

    def __eq__(self, other):
        return isinstance(other, Expr) and self.text == other.text

    def __hash__(self):
        return hash(self.text)

    def __repr__(self):
        return f"Expr({self.text!r})"

    def __str__(self):
        return self.text


@lru_cache(maxsize=None)
def _parse(text: str) -> ast.AST:
    tree = ast.parse(text, mode="eval").body
    _validate(tree)
    return tree


def _validate(node: ast.AST) -> None:
    if isinstance(node, ast.BinOp):
        if not isinstance(node.op, (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)):
            raise ValueError(f"operator {type(node.op).__name__} not allowed")
        if isinstance(node.op, ast.Pow) and not (
            isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)
        ):
            raise ValueError("exponents must be integer literals")
        _validate(node.left)
        _validate(node.right)
    elif isinstance(node, ast.UnaryOp):
        if not isinstance(node.op, (ast.USub, ast.UAdd)):
            raise ValueError("only unary +/- allowed")
        _validate(node.operand)
    elif isinstance(node, ast.Call):
        if not (isinstance(node.func, ast.Name) and node.func.id in ROOT_FUNCS) or len(node.args) != 1:
            raise ValueError("only sqrt(x) and cbrt(x) calls are allowed")
        _validate(node.args[0])
    elif isinstance(node, ast.Name):
        if node.id in ROOT_FUNCS:
            raise ValueError(f"{node.id} used as a variable")
    elif isinstance(node, ast.Constant):
        if not isinstance(node.value, int) or isinstance(node.value, bool):
            raise ValueError("only integer literals allowed")
    else:
        raise ValueError(f"unsupported syntax {type(node).__name__}")


def _names(node: ast.AST) -> Set[str]:
    return {
        n.id
        for n in ast.walk(node)
        if isinstance(n, ast.Name) and n.id not in ROOT_FUNCS
    }


def _root_orders(node: ast.AST) -> Dict[str, int]:
    """Parameter name -> product of root orders it sits under (for exact sampling)."""
    out: Dict[str, int] = {}

    def walk(n, order):
        if isinstance(n, ast.Call):
            order = order * ROOT_FUNCS[n.func.id]
        if isinstance(n, ast.Name) and n.id not in ROOT_FUNCS and order > 1:
            out[n.id] = max(out.get(n.id, 1), order)
        for child in ast.iter_child_nodes(n):
            walk(child, order)

    walk(node, 1)
    return out


def _eval(node: ast.AST, env: Mapping[str, Scalar]) -> Scalar:
    if isinstance(node, ast.Constant):
        return as_scalar(node.value)
    if isinstance(node, ast.Name):
        try:
            return as_scalar(env[node.id])
        except KeyError:
            raise KeyError(f"no value for parameter {node.id!r}") from None
    if isinstance(node, ast.UnaryOp):
        v = _eval(node.operand, env)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.Call):
        return exact_root(_eval(node.args[0], env), ROOT_FUNCS[node.func.id])
    left = _eval(node.left, env)
    if isinstance(node.op, ast.Pow):
        return left ** node.right.value
    right = _eval(node.right, env)
    if isinstance(node.op, ast.Add):
        return left + right
    if isinstance(node.op, ast.Sub):
        return left - right
    if isinstance(node.op, ast.Mult):
        return left * right
    return left / right
