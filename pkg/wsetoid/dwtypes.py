"""
wsetoid.dwtypes
====================================
Indexed well-founded trees over computable signatures, with two instances:
witnesses of ``per`` between raw trees, and witnesses that a map on the
immediate subtrees of a tree is recursively defined by an algebra.

|license-info|
"""

from __future__ import annotations

import logging
import operator

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from itertools import product
from logging import Logger
from typing import Any, TypeVar

from wsetoid.algebra import (
    Algebra,
    CoherentFamily,
    check_coherent,
    rec_ims,
    recursive_step,
    transport_cohfamily,
)
from wsetoid.const import WITNESS_RELATED
from wsetoid.entities import DEFAULT_LIMITS, Assignment, Limits, Report, Violation
from wsetoid.entities.setoids import SetoidFamily
from wsetoid.entities.trees import DTree, Tree, build_tree, fold_tree
from wsetoid.enums import Law
from wsetoid.exceptions import (
    InvalidWitnessError,
    NonExtensionalTreeError,
    NotRelatedError,
    WitnessMismatchError,
)
from wsetoid.wtypes import PerDecider, check_well_formed, ims_setoid, per, subtree


# get a logger
logger: Logger = logging.getLogger(__name__)

R = TypeVar("R")


@dataclass(frozen=True)
class DWSignature:
    """Index-dependent names, arities and child indices.

    Indices may range over an infinite space; only the names and branches at a
    given index need to be finite.
    """

    names: Callable[[Any], Sequence[Any]]
    arity: Callable[[Any, Any], Sequence[Any]]
    next_index: Callable[[Any, Any, Any], Any]
    index_eq: Callable[[Any, Any], bool] = operator.eq
    is_name: Callable[[Any, Any], bool] | None = None
    label: str | None = None

    def has_name(self, index: Any, name: Any) -> bool:
        if self.is_name is not None:
            return self.is_name(index, name)
        return name in self.names(index)


def validate_dtree(sig: DWSignature, index: Any, t: DTree) -> Report:
    """Index discipline at every node, with paths to the offending nodes."""

    report: Report = []
    pending: list[tuple[tuple[int, ...], Any, DTree]] = [((), index, t)]

    while pending:
        path, expected, node = pending.pop()

        if not sig.index_eq(node.index, expected):
            report.append(Violation(Law.INDEX, (path,), "node carries the wrong index"))
            continue

        if not sig.has_name(expected, node.name):
            report.append(
                Violation(Law.UNKNOWN_NAME, (path, node.name), "name not available at this index")
            )
            continue

        branches = sig.arity(expected, node.name)
        if len(branches) != len(node.children):
            report.append(
                Violation(
                    Law.ARITY,
                    (path, node.name),
                    f"expected {len(branches)} children, got {len(node.children)}",
                )
            )
            continue

        for position in reversed(range(len(branches))):
            pending.append(
                (
                    (*path, position),
                    sig.next_index(expected, node.name, branches[position]),
                    node.children[position],
                )
            )

    return report


def check_dtree(sig: DWSignature, index: Any, t: DTree) -> None:
    if report := validate_dtree(sig, index, t):
        first = report[0]
        raise InvalidWitnessError(f"invalid witness at path {list(first.witness[0])}: {first}")


def dfold(
    sig: DWSignature, step: Callable[[Any, Any, list[R]], R], index: Any, t: DTree
) -> R:
    """``dfold(dsup i a f) = step(i, a, [dfold (f b) for b])``."""
    check_dtree(sig, index, t)
    return fold_tree(t, lambda node, below: step(node.index, node.name, below))


def _node_ok(family: SetoidFamily, w: Any) -> bool:
    return (
        isinstance(w, Tree)
        and w.name in family.base
        and len(w.children) == len(family.fiber(w.name))
    )


def wper_signature(family: SetoidFamily) -> DWSignature:
    """Witnesses of ``per``: indexed by tree pairs, one name when the roots are related."""

    def names(index: Any) -> tuple[Any, ...]:
        if not (isinstance(index, tuple) and len(index) == 2):
            return ()
        w, w2 = index
        if not (_node_ok(family, w) and _node_ok(family, w2)):
            return ()
        if family.base.eq(w.name, w2.name) and family.has_transport(w.name, w2.name):
            return (WITNESS_RELATED,)
        return ()

    def arity(index: Any, name: Any) -> tuple[Any, ...]:
        w, w2 = index
        transport, target = family.transport(w.name, w2.name), family.fiber(w2.name)
        return tuple(
            (b, b2)
            for b in family.fiber(w.name).carrier
            for b2 in target.carrier
            if target.eq(transport(b), b2)
        )

    def next_index(index: Any, name: Any, branch: Any) -> tuple[Tree, Tree]:
        (w, w2), (b, b2) = index, branch
        return subtree(family, w, b), subtree(family, w2, b2)

    return DWSignature(names, arity, next_index, label=f"per over {family!r}")


def per_witness(family: SetoidFamily, w: Tree, w2: Tree) -> DTree | None:
    """A witness of ``w ≈ w2``, or ``None`` exactly when they are unrelated."""

    check_well_formed(family, w, w2)
    decide = PerDecider(family)
    if not decide(w, w2):
        return None

    sig = wper_signature(family)

    def expand(index: tuple[Tree, Tree]) -> list[tuple[Tree, Tree]]:
        return [
            sig.next_index(index, WITNESS_RELATED, branch)
            for branch in sig.arity(index, WITNESS_RELATED)
        ]

    witness = build_tree(
        (w, w2), expand, lambda index, below: DTree(index, WITNESS_RELATED, tuple(below))
    )
    logger.debug("per witness for %s ≈ %s with %d nodes", w, w2, witness.size)
    return witness


def witness_sym(family: SetoidFamily, t: DTree) -> DTree:
    """Turn a witness of ``w ≈ w2`` into one of ``w2 ≈ w``."""

    sig = wper_signature(family)
    check_dtree(sig, t.index, t)

    def sources(node: DTree) -> list[DTree]:
        w, w2 = node.index
        given = dict(zip(sig.arity(node.index, WITNESS_RELATED), node.children))
        swapped = (w2, w)

        if not sig.names(swapped):
            raise InvalidWitnessError(f"no transport from {w2.name!r} back to {w.name!r}")

        children = []
        for b2, b in sig.arity(swapped, WITNESS_RELATED):
            if (source := given.get((b, b2))) is None:
                raise InvalidWitnessError(f"branches {b!r}, {b2!r} are not related both ways")
            children.append(source)
        return children

    def flip(node: DTree, below: list[DTree]) -> DTree:
        w, w2 = node.index
        return DTree((w2, w), WITNESS_RELATED, tuple(below))

    return build_tree(t, sources, flip)


def witness_trans(family: SetoidFamily, t1: DTree, t2: DTree) -> DTree:
    """Glue witnesses of ``w ≈ w2`` and ``w2 ≈ w3`` into one of ``w ≈ w3``."""

    sig = wper_signature(family)
    check_dtree(sig, t1.index, t1)
    check_dtree(sig, t2.index, t2)

    if t1.index[1] != t2.index[0]:
        raise WitnessMismatchError(f"{t1.index[1]} and {t2.index[0]} are different trees")

    def halves(pair: tuple[DTree, DTree]) -> list[tuple[DTree, DTree]]:
        left, right = pair
        (w, w2), (_, w3) = left.index, right.index
        first = dict(zip(sig.arity(left.index, WITNESS_RELATED), left.children))
        second = dict(zip(sig.arity(right.index, WITNESS_RELATED), right.children))
        index = (w, w3)

        if not sig.names(index):
            raise InvalidWitnessError(f"no transport from {w.name!r} to {w3.name!r}")

        transport = family.transport(w.name, w2.name)
        children = []

        for b, b3 in sig.arity(index, WITNESS_RELATED):
            b2 = transport(b)
            if (one := first.get((b, b2))) is None or (two := second.get((b2, b3))) is None:
                raise InvalidWitnessError(f"no branch path {b!r} → {b2!r} → {b3!r}")
            children.append((one, two))
        return children

    def glue(pair: tuple[DTree, DTree], below: list[DTree]) -> DTree:
        left, right = pair
        return DTree((left.index[0], right.index[1]), WITNESS_RELATED, tuple(below))

    return build_tree((t1, t2), halves, glue)


def _is_recdef_name(family: SetoidFamily, alg: Algebra, index: Any, maps: Any) -> bool:
    if not (isinstance(index, tuple) and len(index) == 2):
        return False
    w, k = index
    if not (isinstance(maps, tuple) and isinstance(k, tuple)) or not _node_ok(family, w):
        return False
    if not all(isinstance(values, tuple) for values in maps):
        return False

    cf = CoherentFamily(w, maps)
    try:
        if check_coherent(family, alg.target, cf):
            return False
        expected = recursive_step(family, alg, cf)
    except NonExtensionalTreeError:
        return False

    return len(expected) == len(k) and all(
        alg.target.eq(value, wanted) for value, wanted in zip(expected, k)
    )


def recdef_signature(
    family: SetoidFamily, alg: Algebra, limits: Limits = DEFAULT_LIMITS
) -> DWSignature:
    """Witnesses that ``k`` on ``ImS w`` is recursively defined.

    Names at ``(w, k)`` are the coherent families whose recursive step agrees
    with ``k``. Finite targets are searched exhaustively; integer targets only
    offer the family of recursively defined maps of the children.
    """

    target = alg.target

    def candidates(w: Tree) -> list[tuple[Assignment, ...]]:
        if not target.finite:
            return [tuple(rec_ims(family, alg, child) for child in w.children)]

        sizes = [len(ims_setoid(family, child)) for child in w.children]
        limits.check_candidates(len(target) ** sum(sizes), "coherent families")
        return list(product(*(product(target.carrier, repeat=size) for size in sizes)))

    def names(index: Any) -> tuple[Any, ...]:
        w, _ = index
        if not (_node_ok(family, w) and PerDecider(family)(w, w)):
            return ()
        return tuple(maps for maps in candidates(w) if _is_recdef_name(family, alg, index, maps))

    def arity(index: Any, name: Any) -> tuple[Any, ...]:
        return family.fiber(index[0].name).carrier

    def next_index(index: Any, name: Any, branch: Any) -> tuple[Tree, Assignment]:
        w = index[0]
        return subtree(family, w, branch), name[family.fiber(w.name).index(branch)]

    return DWSignature(
        names,
        arity,
        next_index,
        is_name=lambda index, maps: _is_recdef_name(family, alg, index, maps),
        label=f"recursively defined maps into {alg!r}",
    )


def recdef_witness(family: SetoidFamily, alg: Algebra, w: Tree) -> tuple[Assignment, DTree]:
    """The recursively defined map on ``ImS w`` with the witness that it is one."""

    def build(node: Tree, built: list[tuple[Assignment, DTree]]) -> tuple[Assignment, DTree]:
        maps = tuple(k for k, _ in built)
        k = recursive_step(family, alg, CoherentFamily(node, maps))
        return k, DTree((node, k), maps, tuple(d for _, d in built))

    check_well_formed(family, w)
    k, witness = fold_tree(w, build)
    logger.debug("recursively defined map at %s: %r", w, k)
    return k, witness


def find_recdef_witness(
    family: SetoidFamily,
    alg: Algebra,
    w: Tree,
    k: Assignment,
    limits: Limits = DEFAULT_LIMITS,
) -> DTree | None:
    """Search for a witness that ``k`` on ``ImS w`` is recursively defined."""

    sig = recdef_signature(family, alg, limits)

    def search(index: tuple[Tree, Assignment]) -> DTree | None:
        node = index[0]
        for maps in sig.names(index):
            children = []
            for branch, child in zip(sig.arity(index, maps), node.children):
                if (found := search((child, maps[family.fiber(node.name).index(branch)]))) is None:
                    break
                children.append(found)
            else:
                return DTree(index, maps, tuple(children))
        return None

    return search((w, tuple(k)))


def recdef_transport(
    family: SetoidFamily,
    alg: Algebra,
    witness: DTree,
    w2: Tree,
    limits: Limits = DEFAULT_LIMITS,
) -> DTree:
    """Move a witness at ``(w, k)`` to ``(w2, k ∘ transport⁻¹)`` for ``w ≈ w2``."""

    check_dtree(recdef_signature(family, alg, limits), witness.index, witness)

    def pairs(seed: tuple[DTree, Tree]) -> list[tuple[DTree, Tree]]:
        node, there = seed
        w = node.index[0]
        if not per(family, w, there):
            raise NotRelatedError(f"{w} and {there} are not related")

        back, fiber = family.transport(there.name, w.name), family.fiber(w.name)
        return [
            (node.children[fiber.index(back(s2))], child2)
            for s2, child2 in zip(family.fiber(there.name).carrier, there.children)
        ]

    def move(seed: tuple[DTree, Tree], below: list[DTree]) -> DTree:
        node, there = seed
        w, k = node.index
        back, fiber = family.transport(there.name, w.name), family.fiber(w.name)
        moved_k = tuple(k[fiber.index(back(s2))] for s2 in family.fiber(there.name).carrier)
        moved = transport_cohfamily(family, CoherentFamily(w, node.name), there)
        return DTree((there, moved_k), moved.maps, tuple(below))

    return build_tree((witness, w2), pairs, move)


def recdef_agree(
    family: SetoidFamily,
    alg: Algebra,
    left: DTree,
    right: DTree,
    limits: Limits = DEFAULT_LIMITS,
) -> bool:
    """Whether witnesses at related trees carry maps agreeing through the transport."""

    sig = recdef_signature(family, alg, limits)
    check_dtree(sig, left.index, left)
    check_dtree(sig, right.index, right)

    (w, k), (w2, k2) = left.index, right.index
    if not per(family, w, w2):
        raise NotRelatedError(f"{w} and {w2} are not related")

    transport, fiber2 = family.transport(w.name, w2.name), family.fiber(w2.name)
    return all(
        alg.target.eq(value, k2[fiber2.index(transport(s))])
        for s, value in zip(family.fiber(w.name).carrier, k)
    )
