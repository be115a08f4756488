from __future__ import annotations

from typing import Any, Callable

import pytest

from hypothesis import given, settings

from tests.helpers import FIXTURES, SHIPPED, trees
from wsetoid.algebra import Algebra, fold, fold_map, is_algebra_morphism
from wsetoid.codec import load_algebra, load_family, read_document
from wsetoid.entities.setoids import SetoidFamily, validate_family
from wsetoid.entities.trees import Tree
from wsetoid.enums import Law
from wsetoid.signatures import (
    SIGNATURES,
    bintree_signature,
    cons_name,
    counting_algebra,
    depth_algebra,
    length_algebra,
    size_algebra,
)
from wsetoid.wtypes import enumerate_extensional, per


BINTREE = bintree_signature().family
LISTS = SIGNATURES["list_codiscrete2"]().family

EMPTY = {"elements": [], "eq": "discrete"}
UV = {"elements": ["u", "v"], "eq": "discrete"}
IDENTITY = {"u": "u", "v": "v"}
SWAP = {"u": "v", "v": "u"}


def _refl(*elements: str) -> list[list[str]]:
    return [[x, x] for x in elements]


MUTATIONS: dict[str, tuple[dict[str, Any], set[Law]]] = {
    "base_not_reflexive": (
        {
            "base": {"elements": ["a", "b"], "eq": [["a", "a"]]},
            "fibers": {"a": EMPTY, "b": EMPTY},
        },
        {Law.REFLEXIVITY},
    ),
    "base_not_symmetric": (
        {
            "base": {"elements": ["a", "b"], "eq": [*_refl("a", "b"), ["a", "b"]]},
            "fibers": {"a": EMPTY, "b": EMPTY},
            "transports": {"a->b": {}},
        },
        {Law.SYMMETRY},
    ),
    "base_not_transitive": (
        {
            "base": {
                "elements": ["a", "b", "c"],
                "eq": [*_refl("a", "b", "c"), ["a", "b"], ["b", "a"], ["b", "c"], ["c", "b"]],
            },
            "fibers": {"a": EMPTY, "b": EMPTY, "c": EMPTY},
            "transports": {"a->b": {}, "b->a": {}, "b->c": {}, "c->b": {}},
        },
        {Law.TRANSITIVITY},
    ),
    "fiber_not_symmetric": (
        {
            "base": {"elements": ["leaf", "node"], "eq": "discrete"},
            "fibers": {
                "leaf": EMPTY,
                "node": {"elements": ["l", "r"], "eq": [*_refl("l", "r"), ["l", "r"]]},
            },
        },
        {Law.SYMMETRY},
    ),
    "fiber_not_transitive": (
        {
            "base": {"elements": ["zero", "succ"], "eq": "discrete"},
            "fibers": {
                "zero": EMPTY,
                "succ": {
                    "elements": ["x", "y", "z"],
                    "eq": [*_refl("x", "y", "z"), ["x", "y"], ["y", "x"], ["y", "z"], ["z", "y"]],
                },
            },
        },
        {Law.TRANSITIVITY},
    ),
    "missing_transport": (
        read_document(FIXTURES / "missing_transport.json"),
        {Law.MISSING_TRANSPORT},
    ),
    "transport_not_extensional": (
        {
            "base": {"elements": ["a", "b"], "eq": "codiscrete"},
            "fibers": {
                "a": {"elements": ["u", "v"], "eq": "codiscrete"},
                "b": {"elements": ["p", "q"], "eq": "discrete"},
            },
            "transports": {"a->b": {"u": "p", "v": "q"}, "b->a": {"p": "u", "q": "v"}},
        },
        {Law.EXTENSIONALITY},
    ),
    "identity_moves": (
        {
            "base": {"elements": ["a"], "eq": "discrete"},
            "fibers": {"a": UV},
            "transports": {"a->a": SWAP},
        },
        {Law.TRANSPORT_IDENTITY, Law.TRANSPORT_COMPOSITION},
    ),
    "composition_fails": (
        {
            "base": {"elements": ["a", "b", "c"], "eq": "codiscrete"},
            "fibers": {"a": UV, "b": UV, "c": UV},
            "transports": {
                "a->b": SWAP,
                "b->a": SWAP,
                "a->c": IDENTITY,
                "c->a": IDENTITY,
                "b->c": IDENTITY,
                "c->b": IDENTITY,
            },
        },
        {Law.TRANSPORT_COMPOSITION},
    ),
    "no_inverse": (
        {
            "base": {"elements": ["a", "b"], "eq": "codiscrete"},
            "fibers": {"a": UV, "b": UV},
            "transports": {"a->b": IDENTITY, "b->a": SWAP},
        },
        {Law.TRANSPORT_COMPOSITION, Law.TRANSPORT_INVERSE},
    ),
}


@pytest.mark.parametrize("name", sorted(SIGNATURES))
def test_shipped_signatures_break_no_law(name: str) -> None:
    assert validate_family(load_family(read_document(SHIPPED / f"{name}.json"))) == []


@pytest.mark.parametrize("name", sorted(MUTATIONS))
def test_each_mutation_breaks_exactly_its_laws(name: str) -> None:
    doc, broken = MUTATIONS[name]
    assert {violation.law for violation in validate_family(load_family(doc))} == broken


def test_missing_transport_is_reported_once() -> None:
    report = validate_family(load_family(MUTATIONS["missing_transport"][0]))
    assert [(v.law, v.witness, v.message) for v in report] == [
        (Law.MISSING_TRANSPORT, ("b", "a"), "no transport from 'b' to 'a'")
    ]


@settings(max_examples=100, deadline=None)
@given(trees(BINTREE))
def test_fold_commutes_with_the_structure_map(w: Tree) -> None:
    size = size_algebra(BINTREE)
    below = tuple(fold(BINTREE, size, child) for child in w.children)
    assert fold(BINTREE, size, w) == size(w.name, below)
    assert fold(BINTREE, size, w) == w.size


def _swap_letters(w: Tree) -> Tree:
    swapped = {cons_name("a"): cons_name("b"), cons_name("b"): cons_name("a")}
    return Tree(swapped.get(w.name, w.name), tuple(_swap_letters(child) for child in w.children))


@settings(max_examples=100, deadline=None)
@given(trees(LISTS))
def test_fold_respects_per(w: Tree) -> None:
    w2 = _swap_letters(w)
    length = length_algebra(LISTS)

    assert per(LISTS, w, w2)
    assert fold(LISTS, length, w) == fold(LISTS, length, w2)


@settings(max_examples=100, deadline=None)
@given(trees(LISTS))
def test_shipped_length_algebra_agrees_with_the_built_in_one(w: Tree) -> None:
    shipped = load_algebra(read_document(SHIPPED / "list_length.json"), LISTS)
    assert fold(LISTS, shipped, w) == fold(LISTS, length_algebra(LISTS), w) == w.depth


@pytest.mark.parametrize(
    ("signature", "build"),
    [
        ("nat", counting_algebra),
        ("bintree", size_algebra),
        ("bintree", depth_algebra),
        ("list_codiscrete2", length_algebra),
    ],
)
def test_fold_is_a_morphism_at_depth_four(
    signature: str, build: Callable[[SetoidFamily], Algebra]
) -> None:
    family = SIGNATURES[signature]().family
    algebra = build(family)
    universe = enumerate_extensional(family, 4)
    check = is_algebra_morphism(family, algebra, fold_map(family, algebra, universe))

    assert check
    assert check.counterexample is None
