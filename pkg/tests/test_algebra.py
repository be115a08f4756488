from __future__ import annotations

import pytest

from hypothesis import given, settings
from hypothesis import strategies as st

from wsetoid.algebra import (
    Algebra,
    CoherentFamily,
    MapFamily,
    builtin_algebra,
    check_coherent,
    comprehend,
    enumerate_morphisms,
    fold,
    fold_map,
    from_family,
    initial_morphism,
    is_algebra_morphism,
    poly_apply,
    poly_eq,
    poly_map,
    rec_ims,
    recursive_family,
    recursive_step,
    restrict,
    restrictions,
    table_algebra,
    transport_cohfamily,
    uniqueness_check,
    validate_algebra,
)
from wsetoid.entities.setoids import (
    INTEGERS,
    ExtFun,
    SetoidFamily,
    TableSetoid,
    codiscrete,
    compose,
    discrete,
    identity,
    pointwise_eq,
    validate_setoid,
)
from wsetoid.entities.trees import leaf
from wsetoid.enums import Law
from wsetoid.exceptions import (
    AlgebraError,
    DepthExceededError,
    IncoherentFamilyError,
    NonExtensionalTreeError,
    NotAMorphismError,
    NotRelatedError,
    NotTotalError,
    UnknownElementError,
    WSetoidError,
)
from wsetoid.expr import Child, Lit, add
from wsetoid.signatures import (
    LEAF,
    LEFT,
    NIL,
    NODE,
    RIGHT,
    SIGNATURES,
    SUCC,
    ZERO,
    bintree_signature,
    complete_tree,
    cons_name,
    counting_algebra,
    cyclic_algebra,
    depth_algebra,
    from_list,
    length_algebra,
    nat_signature,
    node,
    nonext_signature,
    numeral,
    size_algebra,
)
from wsetoid.wtypes import enumerate_extensional


NAT = nat_signature().family
BINTREE = bintree_signature().family
NONEXT = nonext_signature().family
LISTS = SIGNATURES["list_codiscrete2"]().family

BIT = discrete((0, 1))


def test_counting_numerals() -> None:
    counting = counting_algebra(NAT)
    assert [fold(NAT, counting, numeral(k)) for k in range(7)] == list(range(7))


def test_counting_a_deep_numeral() -> None:
    counting = counting_algebra(NAT)
    assert fold(NAT, counting, numeral(2000)) == 2000
    assert rec_ims(NAT, counting, numeral(600)) == (599,)


def test_size_and_depth_of_binary_trees() -> None:
    assert fold(BINTREE, size_algebra(BINTREE), complete_tree(2)) == 7
    assert fold(BINTREE, size_algebra(BINTREE), node(leaf(LEAF), leaf(LEAF))) == 3
    assert fold(BINTREE, depth_algebra(BINTREE), complete_tree(2)) == 3
    assert fold(BINTREE, depth_algebra(BINTREE), node(leaf(LEAF), complete_tree(1))) == 3


def test_length_of_lists() -> None:
    assert fold(LISTS, length_algebra(LISTS), from_list("aba")) == 3
    assert fold(LISTS, length_algebra(LISTS), leaf(NIL)) == 0


def test_fold_needs_an_extensional_tree() -> None:
    bad = node(leaf(LEAF), complete_tree(1))
    with pytest.raises(NonExtensionalTreeError):
        fold(NONEXT, size_algebra(NONEXT), bad)


def test_builtin_algebras_are_checked_against_the_family() -> None:
    with pytest.raises(NotTotalError):
        builtin_algebra(NAT, {ZERO: Lit(0)})

    with pytest.raises(UnknownElementError):
        builtin_algebra(NAT, {ZERO: Lit(0), SUCC: add(Child("left"), Lit(1))})


def test_table_algebra_rows_are_checked() -> None:
    with pytest.raises(UnknownElementError):
        table_algebra(NAT, BIT, {("two", ()): 0})

    with pytest.raises(NotTotalError):
        table_algebra(NAT, BIT, {(SUCC, ()): 0})

    with pytest.raises(UnknownElementError):
        table_algebra(NAT, BIT, {(ZERO, ()): 5})


def test_values_outside_the_target_are_rejected() -> None:
    rogue = Algebra(NAT, BIT, lambda a, k: 5)
    with pytest.raises(AlgebraError):
        rogue(ZERO, ())


def test_poly_apply_keeps_extensional_assignments() -> None:
    assert len(poly_apply(BINTREE, BIT)) == 5
    # related branches must carry related values
    assert [k for _, k in poly_apply(NONEXT, BIT).carrier] == [(), (0, 0), (1, 1)]
    assert validate_setoid(poly_apply(LISTS, BIT)) == []


def test_poly_eq_follows_the_transport() -> None:
    a, b = cons_name("a"), cons_name("b")
    assert poly_eq(LISTS, BIT.eq, (a, (1,)), (b, (1,)))
    assert not poly_eq(LISTS, BIT.eq, (a, (1,)), (b, (0,)))
    assert not poly_eq(LISTS, BIT.eq, (NIL, ()), (a, (0,)))


def test_poly_map() -> None:
    flip = ExtFun(BIT, BIT, (1, 0))
    mapped = poly_map(BINTREE, flip)
    assert mapped((NODE, (0, 1))) == (NODE, (1, 0))
    assert mapped((LEAF, ())) == (LEAF, ())


# 0..3 up to parity, so maps out of it have to respect the relation
PARITY = TableSetoid(range(4), [(x, y) for x in range(4) for y in range(4) if (x - y) % 2 == 0])
TRIT = discrete((0, 1, 2))
COLOURS = codiscrete(("red", "blue"))


@pytest.mark.parametrize("family", [BINTREE, NONEXT, LISTS], ids=["bintree", "nonext", "list"])
@settings(max_examples=25, deadline=None)
@given(
    by_parity=st.tuples(st.sampled_from(TRIT.carrier), st.sampled_from(TRIT.carrier)),
    colours=st.tuples(*[st.sampled_from(COLOURS.carrier)] * len(TRIT)),
)
def test_poly_map_is_a_functor(
    family: SetoidFamily, by_parity: tuple[int, int], colours: tuple[str, ...]
) -> None:
    f = ExtFun.from_callable(PARITY, TRIT, lambda x: by_parity[x % 2])
    g = ExtFun(TRIT, COLOURS, colours)

    assert pointwise_eq(
        poly_map(family, compose(g, f)), compose(poly_map(family, g), poly_map(family, f))
    )
    assert pointwise_eq(poly_map(family, identity(PARITY)), identity(poly_apply(family, PARITY)))
    assert pointwise_eq(poly_map(family, identity(TRIT)), identity(poly_apply(family, TRIT)))


def test_validate_algebra() -> None:
    assert validate_algebra(size_algebra(BINTREE)) == []
    assert validate_algebra(length_algebra(LISTS)) == []
    assert validate_algebra(cyclic_algebra(size_algebra(BINTREE))) == []

    a, b = cons_name("a"), cons_name("b")
    twisted = table_algebra(
        LISTS,
        BIT,
        {(NIL, ()): 0, (a, (0,)): 0, (a, (1,)): 1, (b, (0,)): 1, (b, (1,)): 0},
    )
    assert {v.law for v in validate_algebra(twisted)} == {Law.EXTENSIONALITY}

    partial = table_algebra(LISTS, BIT, {(NIL, ()): 0})
    assert {v.law for v in validate_algebra(partial)} == {Law.TOTALITY}


def test_rec_ims_is_the_fold_of_the_children() -> None:
    size = size_algebra(BINTREE)
    w = node(complete_tree(1), leaf(LEAF))
    assert rec_ims(BINTREE, size, w) == (3, 1)
    assert rec_ims(BINTREE, size, leaf(LEAF)) == ()


def test_check_coherent() -> None:
    w = node(complete_tree(1), complete_tree(1))

    assert check_coherent(BINTREE, INTEGERS, CoherentFamily(w, ((1, 1), (1, 1)))) == []

    separating = check_coherent(BINTREE, INTEGERS, CoherentFamily(w, ((1, 2), (1, 1))))
    assert {v.law for v in separating} == {Law.EXTENSIONALITY, Law.COHERENCE}

    disagreeing = check_coherent(BINTREE, INTEGERS, CoherentFamily(w, ((1, 1), (2, 2))))
    assert {v.law for v in disagreeing} == {Law.COHERENCE}
    assert disagreeing[0].witness == (LEFT, RIGHT, LEFT)

    short = check_coherent(BINTREE, INTEGERS, CoherentFamily(w, ((1, 1),)))
    assert [v.law for v in short] == [Law.TOTALITY]

    outside = check_coherent(BINTREE, BIT, CoherentFamily(w, ((1, 1), (7, 7))))
    assert [v.law for v in outside] == [Law.UNKNOWN_ELEMENT]


def test_recursive_step() -> None:
    size = size_algebra(BINTREE)
    w = node(complete_tree(1), complete_tree(1))

    assert recursive_step(BINTREE, size, CoherentFamily(w, ((1, 1), (1, 1)))) == (3, 3)

    with pytest.raises(IncoherentFamilyError) as error:
        recursive_step(BINTREE, size, CoherentFamily(w, ((1, 1), (2, 2))))
    assert error.value.pair == (LEFT, RIGHT)


def test_transport_cohfamily() -> None:
    length = length_algebra(LISTS)
    w, w2 = from_list("ab"), from_list("ba")
    cf = CoherentFamily(w, tuple(rec_ims(LISTS, length, child) for child in w.children))

    moved = transport_cohfamily(LISTS, cf, w2)
    assert moved.tree == w2
    assert check_coherent(LISTS, INTEGERS, moved) == []
    assert recursive_step(LISTS, length, moved) == rec_ims(LISTS, length, w2)

    with pytest.raises(NotRelatedError):
        transport_cohfamily(LISTS, cf, from_list("a"))


def test_restrict_and_map_families() -> None:
    size = size_algebra(BINTREE)
    shallow = enumerate_extensional(BINTREE, 1)
    h = fold_map(BINTREE, size, shallow)

    assert restrict(BINTREE, h, complete_tree(1)) == (1, 1)

    with pytest.raises(DepthExceededError):
        restrict(BINTREE, h, complete_tree(3))

    with pytest.raises(DepthExceededError):
        restrictions(BINTREE, h)[complete_tree(2)]


def test_comprehend_rejects_incoherent_map_families() -> None:
    length = length_algebra(LISTS)
    universe = enumerate_extensional(LISTS, 1)
    a, b = from_list("a"), from_list("b")

    maps = MapFamily(universe, {leaf(NIL): (), a: (0,), b: (1,)})
    with pytest.raises(IncoherentFamilyError) as error:
        comprehend(LISTS, length, maps, a)
    assert error.value.pair == (a, b)

    coherent = MapFamily(universe, {leaf(NIL): (), a: (0,), b: (0,)})
    assert comprehend(LISTS, length, coherent, a) == (cons_name("a"), (0,))


@pytest.mark.parametrize(
    ("family", "algebra"),
    [
        (NAT, counting_algebra(NAT)),
        (BINTREE, size_algebra(BINTREE)),
        (BINTREE, depth_algebra(BINTREE)),
        (LISTS, length_algebra(LISTS)),
        (BINTREE, cyclic_algebra(size_algebra(BINTREE))),
    ],
)
def test_restriction_and_comprehension_are_inverse(family: SetoidFamily, algebra: Algebra) -> None:
    universe = enumerate_extensional(family, 3)
    h = fold_map(family, algebra, universe)

    assert pointwise_eq(from_family(family, algebra, restrictions(family, h)), h)

    recursive = recursive_family(family, algebra, universe)
    round_trip = restrictions(family, from_family(family, algebra, recursive))
    assert all(round_trip[w] == recursive[w] for w in universe.carrier)

    assert pointwise_eq(initial_morphism(family, algebra, universe), h)


def test_is_algebra_morphism() -> None:
    size = size_algebra(BINTREE)
    universe = enumerate_extensional(BINTREE, 2)

    assert is_algebra_morphism(BINTREE, size, fold_map(BINTREE, size, universe))

    zero = ExtFun(universe, INTEGERS, (0,) * len(universe))
    check = is_algebra_morphism(BINTREE, size, zero)
    assert not check
    assert check.counterexample == leaf(LEAF)

    with pytest.raises(DepthExceededError):
        is_algebra_morphism(BINTREE, size, zero, depth=3)

    with pytest.raises(WSetoidError):
        is_algebra_morphism(BINTREE, size, ExtFun(BIT, INTEGERS, (0, 0)))


def test_uniqueness_check() -> None:
    size = size_algebra(BINTREE)
    universe = enumerate_extensional(BINTREE, 2)

    assert uniqueness_check(BINTREE, size, fold_map(BINTREE, size, universe))

    with pytest.raises(NotAMorphismError):
        uniqueness_check(BINTREE, size, ExtFun(universe, INTEGERS, (0,) * len(universe)))


@pytest.mark.parametrize(
    ("family", "algebra"),
    [
        (NAT, cyclic_algebra(counting_algebra(NAT))),
        (BINTREE, cyclic_algebra(size_algebra(BINTREE))),
        (BINTREE, cyclic_algebra(depth_algebra(BINTREE))),
        (LISTS, cyclic_algebra(length_algebra(LISTS))),
    ],
)
def test_the_only_morphism_into_a_finite_algebra_is_fold(
    family: SetoidFamily, algebra: Algebra
) -> None:
    universe = enumerate_extensional(family, 2)
    morphisms = enumerate_morphisms(family, algebra, universe)

    assert len(morphisms) == 1
    assert pointwise_eq(morphisms[0], fold_map(family, algebra, universe))
    assert uniqueness_check(family, algebra, morphisms[0])


def test_morphisms_are_only_enumerated_into_finite_targets() -> None:
    with pytest.raises(WSetoidError):
        enumerate_morphisms(NAT, counting_algebra(NAT), enumerate_extensional(NAT, 2))
