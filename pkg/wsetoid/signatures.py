"""
wsetoid.signatures
====================================
Familiar datatypes as setoid families: natural numbers, lists over a setoid,
binary trees, and a signature whose trees need not be extensional. Also the
algebras the test suites fold into.

|license-info|
"""

from __future__ import annotations

import logging

from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass
from functools import partial
from logging import Logger
from typing import Any

from wsetoid.algebra import Algebra, builtin_algebra
from wsetoid.entities import DEFAULT_LIMITS, Assignment, Limits
from wsetoid.entities.setoids import (
    Setoid,
    SetoidFamily,
    TableSetoid,
    codiscrete,
    discrete,
    identity,
    related_pairs,
    validate_setoid,
)
from wsetoid.entities.trees import Tree, leaf
from wsetoid.enums import AlgebraKind
from wsetoid.exceptions import InvalidSetoidError
from wsetoid.expr import Child, Expr, Lit, add, maximum


# get a logger
logger: Logger = logging.getLogger(__name__)

ZERO, SUCC, PRED = "zero", "succ", "pred"
NIL, CONS, TAIL = "nil", "cons", "tail"
LEAF, NODE, LEFT, RIGHT = "leaf", "node", "l", "r"
BRANCH_0, BRANCH_1 = "b0", "b1"

CYCLIC_MODULUS = 3


@dataclass(frozen=True, eq=False)
class NamedSignature:
    label: str
    family: SetoidFamily
    description: str = ""


def nat_signature() -> NamedSignature:
    """``zero`` and ``succ`` with a single ``pred`` branch."""

    base = discrete((ZERO, SUCC))
    family = SetoidFamily(base, {ZERO: discrete(()), SUCC: discrete((PRED,))}, label="nat")
    return NamedSignature("nat", family, "natural numbers as unary numerals")


def numeral(k: int) -> Tree:
    w = leaf(ZERO)
    for _ in range(k):
        w = Tree(SUCC, (w,))
    return w


def cons_name(x: Any) -> str:
    return f"{CONS}:{x}"


def list_signature(
    elements: Setoid, limits: Limits = DEFAULT_LIMITS, label: str = "list"
) -> NamedSignature:
    """Lists over ``elements``: ``nil`` and one ``cons`` name per element.

    Cons names are related exactly when their elements are; all of them share
    the singleton ``tail`` fiber with identity transports.
    """

    if report := validate_setoid(elements, limits):
        raise InvalidSetoidError(f"list elements: {report[0]}")

    names = {x: cons_name(x) for x in elements.carrier}
    base = TableSetoid(
        (NIL, *names.values()),
        [(NIL, NIL), *((names[x], names[y]) for x, y in related_pairs(elements))],
    )
    limits.check_carrier(len(base))

    tail = discrete((TAIL,))
    family = SetoidFamily(
        base,
        {NIL: discrete(()), **{name: tail for name in names.values()}},
        {(names[x], names[y]): identity(tail) for x, y in related_pairs(elements)},
        label=label,
    )
    return NamedSignature(label, family, f"finite lists over {elements!r}")


def from_list(items: Iterable[Any]) -> Tree:
    w = leaf(NIL)
    for x in reversed(list(items)):
        w = Tree(cons_name(x), (w,))
    return w


def bintree_signature() -> NamedSignature:
    base = discrete((LEAF, NODE))
    family = SetoidFamily(
        base, {LEAF: discrete(()), NODE: discrete((LEFT, RIGHT))}, label="bintree"
    )
    return NamedSignature("bintree", family, "binary trees without labels")


def node(left: Tree, right: Tree) -> Tree:
    return Tree(NODE, (left, right))


def complete_tree(depth: int) -> Tree:
    """The complete binary tree with ``2**depth`` leaves."""
    w = leaf(LEAF)
    for _ in range(depth):
        w = node(w, w)
    return w


def nonext_signature() -> NamedSignature:
    """Nodes with two related branches, so trees may fail to be extensional."""

    base = discrete((LEAF, NODE))
    family = SetoidFamily(
        base, {LEAF: discrete(()), NODE: codiscrete((BRANCH_0, BRANCH_1))}, label="nonext"
    )
    return NamedSignature("nonext", family, "binary nodes whose two branches are related")


SIGNATURES: dict[str, Callable[[], NamedSignature]] = {
    "nat": nat_signature,
    "bintree": bintree_signature,
    "nonext": nonext_signature,
    "list_codiscrete2": partial(
        list_signature, codiscrete(("a", "b")), label="list_codiscrete2"
    ),
    "list_discrete2": partial(list_signature, discrete(("a", "b")), label="list_discrete2"),
}


def _children(family: SetoidFamily, a: Any) -> list[Child]:
    return [Child(b) for b in family.fiber(a).carrier]


def _one_more(family: SetoidFamily, a: Any) -> Expr:
    children = _children(family, a)
    return add(Lit(1), *children) if children else Lit(1)


def _one_deeper(family: SetoidFamily, a: Any) -> Expr:
    children = _children(family, a)
    return add(Lit(1), maximum(*children)) if children else Lit(1)


def counting_algebra(family: SetoidFamily) -> Algebra:
    """``zero ↦ 0``, ``succ x ↦ x + 1``."""
    return builtin_algebra(
        family, {ZERO: Lit(0), SUCC: add(Child(PRED), Lit(1))}, label="counting"
    )


def size_algebra(family: SetoidFamily) -> Algebra:
    """Number of nodes, e.g. ``leaf ↦ 1``, ``node(l, r) ↦ 1 + l + r``."""
    return builtin_algebra(
        family,
        {a: _one_more(family, a) for a in family.base.carrier},
        label="size",
    )


def depth_algebra(family: SetoidFamily) -> Algebra:
    """Levels of nodes, e.g. ``leaf ↦ 1``, ``node(l, r) ↦ 1 + max(l, r)``."""
    return builtin_algebra(
        family,
        {a: _one_deeper(family, a) for a in family.base.carrier},
        label="depth",
    )


def length_algebra(family: SetoidFamily) -> Algebra:
    return builtin_algebra(
        family,
        {a: Lit(0) if a == NIL else add(Lit(1), Child(TAIL)) for a in family.base.carrier},
        label="length",
    )


def constant_algebra(family: SetoidFamily, value: int = 0) -> Algebra:
    return builtin_algebra(
        family, {a: Lit(value) for a in family.base.carrier}, label=f"constant {value}"
    )


def cyclic_algebra(alg: Algebra, modulus: int = CYCLIC_MODULUS) -> Algebra:
    """An integer algebra built from ``+`` and ``*`` reduced into ``{0, …, modulus - 1}``."""

    target = discrete(range(modulus))

    def structure(a: Any, assignment: Assignment) -> Any:
        return alg.structure(a, assignment) % modulus

    return Algebra(
        alg.family,
        target,
        structure,
        AlgebraKind.COMPUTED,
        label=f"{alg.label} mod {modulus}",
    )


def named_algebras(signature: NamedSignature) -> Mapping[str, Algebra]:
    """The integer algebras that make sense on a named signature."""

    family = signature.family
    algebras: dict[str, Algebra] = {"constant": constant_algebra(family)}

    if signature.label == "nat":
        algebras["counting"] = counting_algebra(family)
    elif signature.label in ("bintree", "nonext"):
        algebras["size"] = size_algebra(family)
        algebras["depth"] = depth_algebra(family)
    elif signature.label.startswith("list"):
        algebras["length"] = length_algebra(family)

    return algebras
