from __future__ import annotations

import pytest

from wsetoid import WSetoid
from wsetoid.algebra import fold, validate_algebra
from wsetoid.entities.setoids import TableSetoid, codiscrete, discrete, validate_family
from wsetoid.entities.trees import Tree, leaf
from wsetoid.exceptions import InvalidSetoidError, UnknownElementError
from wsetoid.signatures import (
    CONS,
    NIL,
    SIGNATURES,
    TAIL,
    NamedSignature,
    complete_tree,
    cons_name,
    constant_algebra,
    counting_algebra,
    cyclic_algebra,
    from_list,
    list_signature,
    named_algebras,
    numeral,
    size_algebra,
)
from wsetoid.wtypes import is_extensional, per


def test_shipped_signatures_are_valid(named: NamedSignature) -> None:
    assert validate_family(named.family) == []
    assert named.family.label == named.label


def test_named_algebras_are_valid(named: NamedSignature) -> None:
    algebras = named_algebras(named)

    assert "constant" in algebras
    for algebra in algebras.values():
        assert validate_algebra(algebra) == []


def test_numerals(nat: NamedSignature) -> None:
    assert numeral(0) == leaf("zero")
    assert numeral(3).depth == 3
    assert is_extensional(nat.family, numeral(5))


def test_complete_trees(bintree: NamedSignature) -> None:
    assert complete_tree(0) == leaf("leaf")
    assert [complete_tree(d).size for d in range(4)] == [1, 3, 7, 15]
    assert fold(bintree.family, size_algebra(bintree.family), complete_tree(3)) == 15


def test_lists(list_codiscrete: NamedSignature, list_discrete: NamedSignature) -> None:
    assert from_list([]) == leaf(NIL)
    assert from_list("ab") == Tree(cons_name("a"), (Tree(cons_name("b"), (leaf(NIL),)),))
    assert cons_name("a") == f"{CONS}:a"
    assert list_codiscrete.family.fiber(cons_name("a")).carrier == (TAIL,)

    # only the element setoid decides whether these are the same list
    assert per(list_codiscrete.family, from_list("ab"), from_list("ba"))
    assert not per(list_discrete.family, from_list("ab"), from_list("ba"))
    assert not per(list_codiscrete.family, from_list("ab"), from_list("abb"))


def test_lists_over_a_broken_setoid_are_rejected() -> None:
    with pytest.raises(InvalidSetoidError):
        list_signature(TableSetoid(("a", "b"), [("a", "a")]))


def test_lists_over_a_larger_setoid() -> None:
    parity = TableSetoid(
        (0, 1, 2, 3),
        [(x, y) for x in range(4) for y in range(4) if x % 2 == y % 2],
    )
    lists = list_signature(parity, label="list_parity")

    assert validate_family(lists.family) == []
    assert per(lists.family, from_list([0, 1]), from_list([2, 3]))
    assert not per(lists.family, from_list([0, 1]), from_list([1, 0]))

    with pytest.raises(UnknownElementError):
        lists.family.fiber(cons_name(4))


def test_constant_and_cyclic_algebras(bintree: NamedSignature) -> None:
    family = bintree.family
    assert fold(family, constant_algebra(family, 5), complete_tree(2)) == 5

    mod3 = cyclic_algebra(size_algebra(family))
    assert mod3.label == "size mod 3"
    assert mod3.target.carrier == (0, 1, 2)
    assert [fold(family, mod3, complete_tree(d)) for d in range(4)] == [1, 0, 1, 0]


def test_facade() -> None:
    ws = WSetoid.from_signature("nat")

    assert ws.validate() == []
    assert ws.eq(numeral(2), numeral(2))
    assert not ws.eq(numeral(2), numeral(1))
    assert ws.check_ext(numeral(4))
    assert ws.fold(counting_algebra(ws.family), numeral(4)) == 4
    assert len(ws.enumerate(3)) == 4
    assert ws.witness(numeral(1), numeral(2)) is None
    assert ws.witness(numeral(2), numeral(2)).size == 3


def test_facade_over_codiscrete_elements() -> None:
    ws = WSetoid(list_signature(codiscrete(("x", "y", "z"))).family)
    assert ws.eq(from_list("xy"), from_list("zz"))

    ws = WSetoid(list_signature(discrete(("x", "y", "z"))).family)
    assert not ws.eq(from_list("xy"), from_list("zz"))


def test_signature_registry() -> None:
    assert sorted(SIGNATURES) == [
        "bintree",
        "list_codiscrete2",
        "list_discrete2",
        "nat",
        "nonext",
    ]
