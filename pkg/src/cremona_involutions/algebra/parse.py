"""Expression reader built on the stdlib `ast` module.

Accepts + - * / ^ (or **), integer literals, parentheses, polynomial
variables and the names of field generators.
"""
from __future__ import annotations

import ast
from typing import Mapping, Sequence


class ParseError(ValueError):
    pass


def _names_for(ring) -> dict:
    names = {}
    field = getattr(ring, "base_field", ring)
    if hasattr(field, "names") and getattr(field, "levels", 0):
        for i, n in enumerate(field.names):
            names[n] = field.gen(i)
    return names


def evaluate(text: str, env: Mapping[str, object], one):
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as e:
        raise ParseError(f"cannot parse {text!r}: {e.msg}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return one * node.value
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise ParseError(f"unknown name {node.id!r} in {text!r}")
            return env[node.id]
        if isinstance(node, ast.UnaryOp):
            v = ev(node.operand)
            if isinstance(node.op, ast.USub):
                return -v
            if isinstance(node.op, ast.UAdd):
                return v
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            op = node.op
            if isinstance(op, ast.Add):
                return a + b
            if isinstance(op, ast.Sub):
                return a - b
            if isinstance(op, ast.Mult):
                return a * b
            if isinstance(op, ast.Div):
                return a / b
            if isinstance(op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise ParseError("exponents must be integer literals")
                return a ** node.right.value
        raise ParseError(f"unsupported syntax in {text!r}")

    return ev(tree)


def parse_expression(text: str, ring, vars: Sequence[str]):
    from .poly import Poly
    env = _names_for(ring)
    gens = Poly.gens(ring, vars)
    env.update({v: g for v, g in zip(vars, gens)})
    one = Poly.const(ring, vars, ring.one)
    out = evaluate(text, env, one)
    if not isinstance(out, Poly):
        out = one * out
    return out


def parse_element(text: str, field):
    env = _names_for(field)
    return evaluate(str(text), env, field.one)
