"""A small arithmetic expression language.

Grammar: infix ``+ - * /``, ``^`` (or ``**``) for powers, unary minus, numeric
literals, variables, and single-argument calls to::

    sqrt exp log sin cos sinh cosh tanh

Parsing goes through :mod:`ast` after translating ``^`` to ``**``; the Python
tree is then checked against a whitelist and converted to an immutable tree of
:class:`Node` objects.  Unknown identifiers are rejected at parse time.

Evaluation is generic: bound variables may be floats, numpy arrays or
:class:`~eikhelix.jet.Jet` instances, and the result has the matching type.
"""

import ast
import math
import operator
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import jet as _jet
from .errors import BadExpression, DomainError

FUNCTIONS = {
    "sqrt": _jet.sqrt,
    "exp": _jet.exp,
    "log": _jet.log,
    "sin": _jet.sin,
    "cos": _jet.cos,
    "sinh": _jet.sinh,
    "cosh": _jet.cosh,
    "tanh": _jet.tanh,
}

BUILTIN_CONSTANTS = {"pi": math.pi}

_BINOPS = {
    ast.Add: ("+", operator.add),
    ast.Sub: ("-", operator.sub),
    ast.Mult: ("*", operator.mul),
    ast.Div: ("/", None),
    ast.Pow: ("^", _jet.power),
}


class Node:
    __slots__ = ()


@dataclass(frozen=True)
class Num(Node):
    value: float

    def __str__(self):
        return repr(self.value)


@dataclass(frozen=True)
class Var(Node):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Neg(Node):
    arg: Node

    def __str__(self):
        return f"(-{self.arg})"


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: Node
    right: Node

    def __str__(self):
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True)
class Call(Node):
    fn: str
    arg: Node

    def __str__(self):
        return f"{self.fn}({self.arg})"


def _divide(a, b):
    if not isinstance(b, _jet.Jet):
        b = np.asarray(b, dtype=float)
        if np.any(b == 0):
            raise DomainError("division by zero")
    return a / b


_OPS = {sym: fn for sym, fn in _BINOPS.values()}
_OPS["/"] = _divide


@dataclass(frozen=True)
class Expression:
    """Parsed expression; call it with keyword bindings for its variables."""

    source: str
    tree: Node
    variables: frozenset

    def __call__(self, **env):
        missing = self.variables - env.keys()
        if missing:
            raise BadExpression(f"unbound variable(s): {', '.join(sorted(missing))}")
        return _evaluate(self.tree, env)

    def __str__(self):
        return self.source


def _evaluate(node, env):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return env[node.name]
    if isinstance(node, Neg):
        return -_evaluate(node.arg, env)
    if isinstance(node, BinOp):
        return _OPS[node.op](_evaluate(node.left, env), _evaluate(node.right, env))
    if isinstance(node, Call):
        return FUNCTIONS[node.fn](_evaluate(node.arg, env))
    raise TypeError(f"unknown node {node!r}")


def parse(text: str, variables=("s",), constants: Mapping[str, float] | None = None) -> Expression:
    """Parse ``text`` into an :class:`Expression`.

    ``variables`` stay symbolic; names in ``constants`` (and ``pi``) are
    substituted by their numeric values.
    """
    if not isinstance(text, str) or not text.strip():
        raise BadExpression("empty expression")
    consts = dict(BUILTIN_CONSTANTS)
    consts.update(constants or {})
    source = text.strip()
    try:
        tree = ast.parse(source.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise BadExpression(f"cannot parse {source!r}: {exc.msg} at column {exc.offset}") from None
    used = set()
    node = _convert(tree.body, set(variables), consts, used, source)
    return Expression(source=source, tree=node, variables=frozenset(used))


def _convert(node, variables, consts, used, source):
    def bad(msg):
        col = getattr(node, "col_offset", None)
        where = f" at column {col + 1}" if col is not None else ""
        return BadExpression(f"{msg} in {source!r}{where}")

    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
            raise bad(f"unsupported literal {node.value!r}")
        return Num(float(node.value))
    if isinstance(node, ast.Name):
        if node.id in variables:
            used.add(node.id)
            return Var(node.id)
        if node.id in consts:
            return Num(float(consts[node.id]))
        if node.id in FUNCTIONS:
            raise bad(f"function {node.id!r} used without an argument")
        raise bad(f"unknown identifier {node.id!r}")
    if isinstance(node, ast.UnaryOp):
        arg = _convert(node.operand, variables, consts, used, source)
        if isinstance(node.op, ast.USub):
            return Neg(arg)
        if isinstance(node.op, ast.UAdd):
            return arg
        raise bad("unsupported unary operator")
    if isinstance(node, ast.BinOp):
        if type(node.op) not in _BINOPS:
            raise bad(f"unsupported operator {type(node.op).__name__}")
        sym = _BINOPS[type(node.op)][0]
        return BinOp(
            sym,
            _convert(node.left, variables, consts, used, source),
            _convert(node.right, variables, consts, used, source),
        )
    if isinstance(node, ast.Call):
        if not isinstance(node.func, ast.Name):
            raise bad("only named functions can be called")
        name = node.func.id
        if name not in FUNCTIONS:
            raise bad(f"unknown function {name!r}")
        if len(node.args) != 1 or node.keywords:
            raise bad(f"{name} takes exactly one argument")
        return Call(name, _convert(node.args[0], variables, consts, used, source))
    raise bad(f"unsupported syntax {type(node).__name__}")
