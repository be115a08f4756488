"""
wsetoid.wtypes
====================================
Well-founded trees over a setoid family: the partial equivalence relation
``per``, extensional trees, the algebra map ``sup`` and its inverse, and the
setoids of immediate subtrees.

|license-info|
"""

from __future__ import annotations

import logging

from collections.abc import Callable, Iterable, Sequence
from functools import lru_cache
from itertools import product
from logging import Logger
from threading import Lock
from typing import Any, TypeVar

from wsetoid.entities import DEFAULT_LIMITS, Limits, Report, Violation
from wsetoid.entities.setoids import ComputedSetoid, ExtFun, Setoid, SetoidFamily, TableSetoid
from wsetoid.entities.trees import Tree, fold_tree
from wsetoid.enums import Law
from wsetoid.exceptions import (
    DepthExceededError,
    MalformedTreeError,
    NonExtensionalBranchingError,
    NonExtensionalTreeError,
    NotRelatedError,
)


# get a logger
logger: Logger = logging.getLogger(__name__)

R = TypeVar("R")


def well_formed(family: SetoidFamily, w: Tree) -> Report:
    """Arity discipline: known names, one child per fiber element."""

    report: Report = []
    pending: list[tuple[tuple[int, ...], Tree]] = [((), w)]

    while pending:
        path, node = pending.pop()

        if node.name not in family.base:
            report.append(
                Violation(Law.UNKNOWN_NAME, (path, node.name), f"unknown name {node.name!r}")
            )
            continue

        arity = len(family.fiber(node.name))
        if len(node.children) != arity:
            report.append(
                Violation(
                    Law.ARITY,
                    (path, node.name),
                    f"{node.name!r} expects {arity} children, got {len(node.children)}",
                )
            )
            continue

        for position in reversed(range(len(node.children))):
            pending.append(((*path, position), node.children[position]))

    return report


def check_well_formed(family: SetoidFamily, *trees: Tree) -> None:
    for w in trees:
        if report := well_formed(family, w):
            path = "".join(f".children[{position}]" for position in report[0].witness[0])
            raise MalformedTreeError(report[0].message, position=f"${path}")


def subtree(family: SetoidFamily, w: Tree, b: Any) -> Tree:
    """The child of ``w`` hanging off branch ``b``."""
    return w.children[family.fiber(w.name).index(b)]


class PerDecider:
    """Decides ``per`` with a memo over subtree pairs.

    The memo only caches results, so sharing a decider between threads has no
    observable effect.
    """

    def __init__(self, family: SetoidFamily) -> None:
        self.family = family
        self._memo: dict[tuple[Tree, Tree], bool] = {}
        self._lock = Lock()

    def __call__(self, w: Tree, w2: Tree) -> bool:
        goals = [(w, w2)]

        while goals:
            key = goals[-1]
            if self._known(key) is not None:
                goals.pop()
                continue

            result, waiting = self._step(*key)
            if waiting is None:
                with self._lock:
                    self._memo[key] = result
                goals.pop()
            else:
                goals.append(waiting)

        return bool(self._known((w, w2)))

    def _known(self, key: tuple[Tree, Tree]) -> bool | None:
        with self._lock:
            return self._memo.get(key)

    def _step(self, w: Tree, w2: Tree) -> tuple[bool, tuple[Tree, Tree] | None]:
        """The verdict on ``(w, w2)``, or the first undecided pair of subtrees it waits on."""

        family = self.family
        if not family.base.eq(w.name, w2.name) or not family.has_transport(w.name, w2.name):
            return False, None

        transport = family.transport(w.name, w2.name)
        source, target = family.fiber(w.name), family.fiber(w2.name)

        # every pair of branches related along the transport carries related subtrees
        for i, b in enumerate(source.carrier):
            moved = transport(b)
            for j, b2 in enumerate(target.carrier):
                if not target.eq(moved, b2):
                    continue
                pair = (w.children[i], w2.children[j])
                known = self._known(pair)
                if known is None:
                    return False, pair
                if not known:
                    return False, None

        return True, None


def per(family: SetoidFamily, w: Tree, w2: Tree) -> bool:
    """The partial equivalence relation on raw trees.

    Names related in the base, and for every branch pair ``(b, b')`` with
    ``transport(b) ≈ b'`` the corresponding subtrees related.
    """
    check_well_formed(family, w, w2)
    return PerDecider(family)(w, w2)


def is_extensional(family: SetoidFamily, w: Tree) -> bool:
    return per(family, w, w)


def require_extensional(family: SetoidFamily, decide: PerDecider, *trees: Tree) -> None:
    check_well_formed(family, *trees)
    for w in trees:
        if not decide(w, w):
            raise NonExtensionalTreeError(f"{w} is not extensional")


def per_via_transport(family: SetoidFamily, w: Tree, w2: Tree) -> bool:
    """One-sided characterisation of ``per`` for extensional trees.

    Names related, and each subtree of ``w`` related to the subtree of ``w2``
    along the transported branch.
    """
    decide = PerDecider(family)
    require_extensional(family, decide, w, w2)

    if not family.base.eq(w.name, w2.name) or not family.has_transport(w.name, w2.name):
        return False

    transport = family.transport(w.name, w2.name)
    return all(
        decide(child, subtree(family, w2, transport(b)))
        for b, child in zip(family.fiber(w.name).carrier, w.children)
    )


def sup(family: SetoidFamily, a: Any, children: Sequence[Tree]) -> Tree:
    """The algebra map ``s`` on one element: a checked, extensional ``sup``."""

    node = Tree(a, tuple(children))
    check_well_formed(family, node)

    decide = PerDecider(family)
    fiber = family.fiber(a)

    for i, b in enumerate(fiber.carrier):
        for j, b2 in enumerate(fiber.carrier):
            if fiber.eq(b, b2) and not decide(node.children[i], node.children[j]):
                raise NonExtensionalBranchingError(
                    f"branches {b!r} ≈ {b2!r} carry unrelated trees "
                    f"{node.children[i]} and {node.children[j]}",
                    (b, b2),
                )

    return node


def subtree_setoid(family: SetoidFamily, trees: Iterable[Tree]) -> ComputedSetoid:
    """Finite sub-setoid of W on the given extensional trees."""
    distinct = list(dict.fromkeys(trees))
    return ComputedSetoid(distinct, PerDecider(family), label="W")


class TruncatedWSetoid(ComputedSetoid):
    """The extensional trees of depth at most ``depth`` with ``per`` as equality."""

    def __init__(self, family: SetoidFamily, depth: int, trees: Iterable[Tree]) -> None:
        self.family = family
        self.depth = depth
        super().__init__(trees, PerDecider(family), label=f"W≤{depth}")


def enumerate_trees(
    family: SetoidFamily,
    depth: int,
    limits: Limits = DEFAULT_LIMITS,
    extensional: bool = False,
) -> tuple[Tree, ...]:
    """All well-formed trees of depth ≤ ``depth``, shallowest first."""

    decide = PerDecider(family)
    base = family.base
    trees: list[Tree] = []
    candidates = 0

    for level in range(depth + 1):
        fresh: list[Tree] = []

        for a in base.carrier:
            fiber = family.fiber(a)
            arity = len(fiber)

            if arity == 0:
                if level == 0:
                    fresh.append(Tree(a))
                continue

            if level == 0:
                continue

            candidates += len(trees) ** arity
            limits.check_candidates(candidates, "trees")

            for combo in product(trees, repeat=arity):
                if max(child.depth for child in combo) != level - 1:
                    continue
                if extensional and not all(
                    decide(combo[i], combo[j])
                    for i, b in enumerate(fiber.carrier)
                    for j, b2 in enumerate(fiber.carrier)
                    if fiber.eq(b, b2)
                ):
                    continue
                fresh.append(Tree(a, combo))

        logger.debug("depth %d: %d new trees", level, len(fresh))
        trees += fresh

    return tuple(trees)


def enumerate_extensional(
    family: SetoidFamily, depth: int, limits: Limits = DEFAULT_LIMITS
) -> TruncatedWSetoid:
    return TruncatedWSetoid(
        family, depth, enumerate_trees(family, depth, limits, extensional=True)
    )


def unsup(family: SetoidFamily, w: Tree) -> tuple[Any, ExtFun]:
    """Inverse of ``sup``: the name and the branching map out of ``ImS w``."""
    decide = PerDecider(family)
    require_extensional(family, decide, w)
    return w.name, ExtFun(ims_setoid(family, w), subtree_setoid(family, w.children), w.children)


def wrec(family: SetoidFamily, step: Callable[[Any, tuple[Tree, ...], list[R]], R], w: Tree) -> R:
    """The W eliminator: ``wrec(sup a f) = step(a, f, [wrec (f b) for b])``."""
    check_well_formed(family, w)
    return fold_tree(w, lambda node, below: step(node.name, node.children, below))


@lru_cache(maxsize=4096)
def _ims(family: SetoidFamily, w: Tree) -> TableSetoid:
    decide = PerDecider(family)
    require_extensional(family, decide, w)

    carrier = family.fiber(w.name).carrier
    pairs = [
        (b, b2)
        for i, b in enumerate(carrier)
        for j, b2 in enumerate(carrier)
        if decide(w.children[i], w.children[j])
    ]
    return TableSetoid(carrier, pairs, label=f"ImS({w})")


def ims_setoid(family: SetoidFamily, w: Tree) -> TableSetoid:
    """Branches of ``w``, related when they carry per-related subtrees."""
    return _ims(family, w)


def ims_transport(family: SetoidFamily, w: Tree, w2: Tree) -> ExtFun:
    """Transport ``ImS w → ImS w2`` along ``w ≈ w2``: the family transport between the names."""
    if not per(family, w, w2):
        raise NotRelatedError(f"{w} and {w2} are not related")

    transport = family.transport(w.name, w2.name)
    return ExtFun(ims_setoid(family, w), ims_setoid(family, w2), transport.images)


def image_factorization(
    family: SetoidFamily, w: Tree, universe: Setoid | None = None
) -> tuple[ExtFun, ExtFun]:
    """Split the branching map of ``w`` into ``fiber → ImS w → W``."""

    ims = ims_setoid(family, w)
    fiber = family.fiber(w.name)
    codomain = universe if universe is not None else subtree_setoid(family, w.children)

    if missing := [child for child in w.children if child not in codomain]:
        raise DepthExceededError(f"{missing[0]} is not in {codomain!r}")

    return ExtFun(fiber, ims, fiber.carrier), ExtFun(ims, codomain, w.children)


def name_map(family: SetoidFamily, universe: TruncatedWSetoid) -> ExtFun:
    """The name function ``n : W ⇒ A`` on a truncation."""
    return ExtFun(universe, family.base, tuple(w.name for w in universe.carrier))
