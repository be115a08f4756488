"""
wsetoid.expr
====================================
The tiny integer expression language of built-in algebras: integer literals,
references to the value at a branch, and ``+``, ``*``, ``max``, ``min``.

|license-info|
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from functools import reduce
from typing import Any, Union

from wsetoid.exceptions import AlgebraError, WSetoidParseError


@dataclass(frozen=True)
class Lit:
    value: int


@dataclass(frozen=True)
class Child:
    """The recursive result at branch ``branch``."""

    branch: Any


@dataclass(frozen=True)
class Op:
    op: str
    args: tuple[Expr, ...]


Expr = Union[Lit, Child, Op]

OPERATORS: dict[str, Callable[[int, int], int]] = {
    "+": lambda x, y: x + y,
    "*": lambda x, y: x * y,
    "max": max,
    "min": min,
}


def evaluate(expr: Expr, lookup: Callable[[Any], int]) -> int:
    if isinstance(expr, Lit):
        return expr.value

    if isinstance(expr, Child):
        return lookup(expr.branch)

    values = [evaluate(arg, lookup) for arg in expr.args]
    if not values:
        raise AlgebraError(f"operator {expr.op!r} needs at least one argument")
    return reduce(OPERATORS[expr.op], values)


def branches(expr: Expr) -> set[Any]:
    """All branches an expression refers to."""
    if isinstance(expr, Child):
        return {expr.branch}
    if isinstance(expr, Op):
        return set().union(*(branches(arg) for arg in expr.args))
    return set()


def parse_expr(doc: Any, position: str = "$") -> Expr:
    if isinstance(doc, bool):
        raise WSetoidParseError("expected an integer, got a boolean", position)

    if isinstance(doc, int):
        return Lit(doc)

    if isinstance(doc, dict) and set(doc) == {"child"}:
        return Child(doc["child"])

    if isinstance(doc, dict) and set(doc) == {"op", "args"}:
        if doc["op"] not in OPERATORS:
            raise WSetoidParseError(f"unknown operator {doc['op']!r}", f"{position}.op")
        if not isinstance(doc["args"], list) or not doc["args"]:
            raise WSetoidParseError("expected a non-empty list", f"{position}.args")
        return Op(
            doc["op"],
            tuple(
                parse_expr(arg, f"{position}.args[{i}]")
                for i, arg in enumerate(doc["args"])
            ),
        )

    raise WSetoidParseError(
        'expected an integer, {"child": …} or {"op": …, "args": [...]}', position
    )


def dump_expr(expr: Expr) -> Any:
    if isinstance(expr, Lit):
        return expr.value
    if isinstance(expr, Child):
        return {"child": expr.branch}
    return {"op": expr.op, "args": [dump_expr(arg) for arg in expr.args]}


def add(*args: Expr) -> Op:
    return Op("+", args)


def maximum(*args: Expr) -> Op:
    return Op("max", args)
