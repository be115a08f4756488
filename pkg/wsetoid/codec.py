"""
wsetoid.codec
====================================
JSON documents for setoids, families, trees, algebras and witnesses.

Loading checks the schema and resolves identifiers, reporting failures with the
JSON path of the offending value. Dumping produces the canonical document, so
``dump(load(doc)) == doc`` for canonical input.

|license-info|
"""

from __future__ import annotations

import json
import logging

from collections.abc import Mapping
from logging import Logger
from pathlib import Path
from typing import Any

from wsetoid.algebra import Algebra, builtin_algebra, poly_apply, table_algebra
from wsetoid.const import (
    BUILTIN_INT,
    EQ_CODISCRETE,
    EQ_DISCRETE,
    KEY_ARGS,
    KEY_BASE,
    KEY_CHILDREN,
    KEY_ELEMENTS,
    KEY_EQ,
    KEY_EXPR,
    KEY_FIBERS,
    KEY_INDEX,
    KEY_KIND,
    KEY_LABEL,
    KEY_NAME,
    KEY_TABLE,
    KEY_TARGET,
    KEY_TRANSPORTS,
    KEY_VALUE,
    TRANSPORT_SEP,
)
from wsetoid.entities import DEFAULT_LIMITS, Limits, Violation
from wsetoid.entities.setoids import (
    CodiscreteSetoid,
    DiscreteSetoid,
    ExtFun,
    Setoid,
    SetoidFamily,
    TableSetoid,
    related_pairs,
)
from wsetoid.entities.trees import DTree, Tree, build_tree, fold_tree
from wsetoid.enums import AlgebraKind, SetoidKind
from wsetoid.exceptions import NestingLimitError, WSetoidError, WSetoidParseError
from wsetoid.expr import dump_expr, parse_expr


# get a logger
logger: Logger = logging.getLogger(__name__)


def read_document(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as error:
        raise WSetoidParseError(error.msg, f"line {error.lineno} column {error.colno}") from error
    except OSError as error:
        raise WSetoidParseError(f"cannot read {path}: {error.strerror}") from error
    except RecursionError as error:
        raise NestingLimitError(f"{path} nests too deeply to decode") from error


def dumps(value: Any) -> str:
    return json.dumps(dump_value(value), sort_keys=True, ensure_ascii=False)


def _expect(doc: Any, kind: type | tuple[type, ...], position: str, what: str) -> Any:
    if not isinstance(doc, kind) or isinstance(doc, bool):
        raise WSetoidParseError(f"expected {what}", position)
    return doc


def _field(doc: Mapping[str, Any], key: str, position: str) -> Any:
    if key not in doc:
        raise WSetoidParseError(f"missing key {key!r}", position)
    return doc[key]


def _identifier(doc: Any, position: str) -> Any:
    return _expect(doc, (str, int), position, "an identifier (string or integer)")


def resolve(setoid: Setoid, key: Any, position: str) -> Any:
    """The element of ``setoid`` named by ``key``, matching object keys by their text."""
    if key in setoid:
        return key
    for element in setoid.carrier:
        if str(element) == str(key):
            return element
    raise WSetoidParseError(f"unknown element {key!r}", position)


def load_setoid(doc: Any, position: str = "$", limits: Limits = DEFAULT_LIMITS) -> Setoid:
    _expect(doc, dict, position, "a setoid object")
    elements = _expect(_field(doc, KEY_ELEMENTS, position), list, f"{position}.elements", "a list")

    carrier: list[Any] = []
    for i, element in enumerate(elements):
        _identifier(element, f"{position}.elements[{i}]")
        if element in carrier:
            raise WSetoidParseError(f"duplicate element {element!r}", f"{position}.elements[{i}]")
        carrier.append(element)

    limits.check_carrier(len(carrier))
    label = doc.get(KEY_LABEL)
    eq = _field(doc, KEY_EQ, position)

    if eq == EQ_DISCRETE:
        return DiscreteSetoid(carrier, label=label)
    if eq == EQ_CODISCRETE:
        return CodiscreteSetoid(carrier, label=label)

    _expect(eq, list, f"{position}.eq", f'a list of pairs, "{EQ_DISCRETE}" or "{EQ_CODISCRETE}"')

    pairs = []
    for i, pair in enumerate(eq):
        at = f"{position}.eq[{i}]"
        if not isinstance(pair, list) or len(pair) != 2:
            raise WSetoidParseError("expected a pair", at)
        for j, element in enumerate(pair):
            if element not in carrier:
                raise WSetoidParseError(f"unknown element {element!r}", f"{at}[{j}]")
        pairs.append((pair[0], pair[1]))

    return TableSetoid(carrier, pairs, label=label)


def dump_setoid(setoid: Setoid) -> dict[str, Any]:
    if setoid.kind == SetoidKind.BUILTIN:
        raise WSetoidError("the integer setoid has no document form")

    eq: Any
    if setoid.kind == SetoidKind.DISCRETE:
        eq = EQ_DISCRETE
    elif setoid.kind == SetoidKind.CODISCRETE:
        eq = EQ_CODISCRETE
    else:
        eq = [[x, y] for x, y in related_pairs(setoid)]

    doc: dict[str, Any] = {KEY_ELEMENTS: list(setoid.carrier), KEY_EQ: eq}
    if setoid.label:
        doc[KEY_LABEL] = setoid.label
    return doc


def load_family(doc: Any, position: str = "$", limits: Limits = DEFAULT_LIMITS) -> SetoidFamily:
    _expect(doc, dict, position, "a signature object")

    base = load_setoid(_field(doc, KEY_BASE, position), f"{position}.base", limits)

    fibers_at = f"{position}.fibers"
    fiber_docs = _expect(_field(doc, KEY_FIBERS, position), dict, fibers_at, "an object")
    fibers: dict[Any, Setoid] = {}

    for key, fiber_doc in fiber_docs.items():
        a = resolve(base, key, f"{fibers_at}.{key}")
        fibers[a] = load_setoid(fiber_doc, f"{fibers_at}.{key}", limits)

    if missing := [a for a in base.carrier if a not in fibers]:
        raise WSetoidParseError(f"no fiber for {missing[0]!r}", fibers_at)

    transports_at = f"{position}.transports"
    transport_docs = _expect(doc.get(KEY_TRANSPORTS, {}), dict, transports_at, "an object")
    transports: dict[tuple[Any, Any], ExtFun] = {}

    for key, mapping in transport_docs.items():
        at = f"{transports_at}.{key}"
        source_key, sep, target_key = key.partition(TRANSPORT_SEP)
        if not sep:
            raise WSetoidParseError(f"expected a key of the form 'a{TRANSPORT_SEP}b'", at)

        a, a2 = resolve(base, source_key, at), resolve(base, target_key, at)
        source, target = fibers[a], fibers[a2]
        _expect(mapping, dict, at, "an object")

        images = {resolve(source, x, f"{at}.{x}"): y for x, y in mapping.items()}
        if missing := [x for x in source.carrier if x not in images]:
            raise WSetoidParseError(f"transport is not defined on {missing[0]!r}", at)

        transports[(a, a2)] = ExtFun(
            source,
            target,
            tuple(resolve(target, images[x], f"{at}.{x}") for x in source.carrier),
        )

    family = SetoidFamily(base, fibers, transports, label=doc.get(KEY_LABEL))
    logger.debug("loaded %r with %d names", family, len(base))
    return family


def dump_family(family: SetoidFamily) -> dict[str, Any]:
    transports = {
        f"{a}{TRANSPORT_SEP}{a2}": {str(x): y for x, y in transport.items()}
        for (a, a2), transport in family.transports.items()
        if a != a2 or transport.images != transport.dom.carrier
    }

    doc: dict[str, Any] = {
        KEY_BASE: dump_setoid(family.base),
        KEY_FIBERS: {str(a): dump_setoid(family.fiber(a)) for a in family.base.carrier},
        KEY_TRANSPORTS: transports,
    }
    if family.label:
        doc[KEY_LABEL] = family.label
    return doc


def _children_of(doc: Any, position: str) -> list[tuple[Any, str]]:
    children_at = f"{position}.children"
    children = _expect(doc.get(KEY_CHILDREN, []), list, children_at, "a list")
    return [(child, f"{children_at}[{i}]") for i, child in enumerate(children)]


def load_tree(doc: Any, position: str = "$") -> Tree:
    def expand(seed: tuple[Any, str]) -> list[tuple[Any, str]]:
        node, at = seed
        _expect(node, dict, at, "a tree object")
        _identifier(_field(node, KEY_NAME, at), f"{at}.name")
        return _children_of(node, at)

    return build_tree(
        (doc, position), expand, lambda seed, below: Tree(seed[0][KEY_NAME], tuple(below))
    )


def dump_tree(w: Tree) -> dict[str, Any]:
    return fold_tree(w, lambda node, below: {KEY_NAME: node.name, KEY_CHILDREN: below})


def load_value(doc: Any, position: str = "$") -> Any:
    """Tree objects become trees, lists become tuples."""
    if isinstance(doc, dict):
        return load_tree(doc, position)
    if isinstance(doc, list):
        return tuple(load_value(item, f"{position}[{i}]") for i, item in enumerate(doc))
    return doc


def load_witness(doc: Any, position: str = "$") -> DTree:
    loaded: dict[int, tuple[Any, Any]] = {}

    def expand(seed: tuple[Any, str]) -> list[tuple[Any, str]]:
        node, at = seed
        _expect(node, dict, at, "a witness object")
        loaded[id(node)] = (
            load_value(_field(node, KEY_INDEX, at), f"{at}.index"),
            load_value(_field(node, KEY_NAME, at), f"{at}.name"),
        )
        return _children_of(node, at)

    def make(seed: tuple[Any, str], below: list[DTree]) -> DTree:
        return DTree(*loaded[id(seed[0])], tuple(below))

    return build_tree((doc, position), expand, make)


def dump_witness(t: DTree) -> dict[str, Any]:
    return fold_tree(
        t,
        lambda node, below: {
            KEY_INDEX: dump_value(node.index),
            KEY_NAME: dump_value(node.name),
            KEY_CHILDREN: below,
        },
    )


def load_algebra(
    doc: Any, family: SetoidFamily, position: str = "$", limits: Limits = DEFAULT_LIMITS
) -> Algebra:
    _expect(doc, dict, position, "an algebra object")
    kind = _field(doc, KEY_KIND, position)
    label = doc.get(KEY_LABEL)

    if kind == "builtin":
        if (name := _field(doc, KEY_NAME, position)) != BUILTIN_INT:
            raise WSetoidParseError(f"unknown built-in target {name!r}", f"{position}.name")

        expr_at = f"{position}.expr"
        exprs = _expect(_field(doc, KEY_EXPR, position), dict, expr_at, "an object")
        return builtin_algebra(
            family,
            {
                resolve(family.base, key, f"{expr_at}.{key}"): parse_expr(expr, f"{expr_at}.{key}")
                for key, expr in exprs.items()
            },
            label=label,
        )

    if kind == "table":
        target = load_setoid(_field(doc, KEY_TARGET, position), f"{position}.target", limits)
        table_at = f"{position}.table"
        rows = _expect(_field(doc, KEY_TABLE, position), list, table_at, "a list")

        table = {}
        for i, row in enumerate(rows):
            at = f"{table_at}[{i}]"
            _expect(row, dict, at, "a table row")
            a = resolve(family.base, _field(row, KEY_NAME, at), f"{at}.name")
            args = _expect(_field(row, KEY_ARGS, at), list, f"{at}.args", "a list")
            table[(a, tuple(args))] = _field(row, KEY_VALUE, at)

        return table_algebra(family, target, table, label=label)

    raise WSetoidParseError(f"unknown algebra kind {kind!r}", f"{position}.kind")


def dump_algebra(alg: Algebra, limits: Limits = DEFAULT_LIMITS) -> dict[str, Any]:
    """The document of an algebra; computed algebras into finite targets are tabulated."""

    doc: dict[str, Any]

    if alg.kind == AlgebraKind.BUILTIN and alg.exprs is not None:
        doc = {
            KEY_KIND: "builtin",
            KEY_NAME: BUILTIN_INT,
            KEY_EXPR: {str(a): dump_expr(expr) for a, expr in alg.exprs.items()},
        }
    elif alg.target.finite:
        table = alg.table
        if table is None:
            table = {pair: alg(*pair) for pair in poly_apply(alg.family, alg.target, limits)}
        doc = {
            KEY_KIND: "table",
            KEY_TARGET: dump_setoid(alg.target),
            KEY_TABLE: [
                {KEY_NAME: a, KEY_ARGS: list(args), KEY_VALUE: value}
                for (a, args), value in table.items()
            ],
        }
    else:
        raise WSetoidError(f"{alg!r} has no document form")

    if alg.label:
        doc[KEY_LABEL] = alg.label
    return doc


def dump_violation(violation: Violation) -> dict[str, Any]:
    return {
        "law": str(violation.law),
        "witness": dump_value(violation.witness),
        "message": violation.message,
    }


def dump_value(value: Any) -> Any:
    """Plain JSON data for results: trees, witnesses, violations and tuples."""
    if isinstance(value, Tree):
        return dump_tree(value)
    if isinstance(value, DTree):
        return dump_witness(value)
    if isinstance(value, Violation):
        return dump_violation(value)
    if isinstance(value, (tuple, list)):
        return [dump_value(item) for item in value]
    if isinstance(value, dict):
        return {str(key): dump_value(item) for key, item in value.items()}
    return value
