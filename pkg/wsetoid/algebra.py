"""
wsetoid.algebra
====================================
The polynomial functor of a setoid family, its algebras, ``fold`` and the
characterisation of algebra morphisms out of W by restriction to immediate
subtrees and comprehension.

|license-info|
"""

from __future__ import annotations

import logging

from collections.abc import Callable, Mapping
from dataclasses import dataclass
from itertools import product
from logging import Logger
from typing import Any

from wsetoid.entities import DEFAULT_LIMITS, Assignment, Limits, Report, Violation
from wsetoid.entities.setoids import (
    INTEGERS,
    ComputedSetoid,
    ExtFun,
    Setoid,
    SetoidFamily,
    validate_extfun,
)
from wsetoid.entities.trees import Tree, fold_tree
from wsetoid.enums import AlgebraKind, Law
from wsetoid.exceptions import (
    AlgebraError,
    DepthExceededError,
    IncoherentFamilyError,
    NotAMorphismError,
    NotRelatedError,
    NotTotalError,
    UnknownElementError,
    WSetoidError,
)
from wsetoid.expr import Expr, branches, evaluate
from wsetoid.wtypes import PerDecider, TruncatedWSetoid, ims_setoid, per, require_extensional


# get a logger
logger: Logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Algebra:
    """A target setoid with a structure map ``(name, assignment) ↦ value``.

    Assignments are tabulated against the carrier order of the fiber over the name.
    """

    family: SetoidFamily
    target: Setoid
    structure: Callable[[Any, Assignment], Any]
    kind: AlgebraKind = AlgebraKind.COMPUTED
    label: str | None = None
    table: Mapping[tuple[Any, Assignment], Any] | None = None
    exprs: Mapping[Any, Expr] | None = None

    def __repr__(self) -> str:
        return f"Algebra({self.label or self.kind}, {self.target!r})"

    def __call__(self, name: Any, assignment: Assignment) -> Any:
        value = self.structure(name, tuple(assignment))
        if value not in self.target:
            raise AlgebraError(f"{self!r} sends {name!r} to {value!r}, outside its target")
        return value


def table_algebra(
    family: SetoidFamily,
    target: Setoid,
    table: Mapping[tuple[Any, Assignment], Any],
    label: str | None = None,
) -> Algebra:
    """Algebra given by an explicit table of ``(name, assignment) → value`` rows."""

    rows: dict[tuple[Any, Assignment], Any] = {}

    for (a, assignment), value in table.items():
        if a not in family.base:
            raise UnknownElementError(f"table row for unknown name {a!r}")
        if len(assignment) != len(family.fiber(a)):
            raise NotTotalError(f"table row for {a!r} has {len(assignment)} arguments")
        if unknown := [x for x in (*assignment, value) if x not in target]:
            raise UnknownElementError(f"table row for {a!r} mentions {unknown[0]!r}")
        rows[(a, tuple(assignment))] = value

    def structure(a: Any, assignment: Assignment) -> Any:
        try:
            return rows[(a, assignment)]
        except KeyError as error:
            raise AlgebraError(f"no table row for ({a!r}, {list(assignment)!r})") from error

    return Algebra(family, target, structure, AlgebraKind.TABLE, label, table=rows)


def builtin_algebra(
    family: SetoidFamily, exprs: Mapping[Any, Expr], label: str | None = None
) -> Algebra:
    """Algebra into the built-in integers, one expression per name."""

    if missing := [a for a in family.base.carrier if a not in exprs]:
        raise NotTotalError(f"no expression for {missing!r}")

    for a, expr in exprs.items():
        fiber = family.fiber(a)
        if unknown := [b for b in branches(expr) if b not in fiber]:
            raise UnknownElementError(
                f"expression for {a!r} refers to unknown branch {unknown[0]!r}"
            )

    def structure(a: Any, assignment: Assignment) -> Any:
        fiber = family.fiber(a)
        return evaluate(exprs[a], lambda b: assignment[fiber.index(b)])

    return Algebra(family, INTEGERS, structure, AlgebraKind.BUILTIN, label, exprs=dict(exprs))


def poly_eq(
    family: SetoidFamily,
    eq: Callable[[Any, Any], bool],
    left: tuple[Any, Assignment],
    right: tuple[Any, Assignment],
) -> bool:
    """``(a, k) ≈ (a', k')``: related names, ``k`` agreeing with ``k'`` through the transport."""

    (a, k), (a2, k2) = left, right
    if not family.base.eq(a, a2) or not family.has_transport(a, a2):
        return False

    transport, fiber = family.transport(a, a2), family.fiber(a2)
    return all(
        eq(value, k2[fiber.index(transport(b))]) for b, value in zip(family.fiber(a).carrier, k)
    )


class PolyAppliedSetoid(Setoid):
    """``P_B X``: names paired with extensional assignments into ``X``."""

    def __init__(
        self, family: SetoidFamily, target: Setoid, limits: Limits = DEFAULT_LIMITS
    ) -> None:
        if not target.finite:
            raise WSetoidError("the polynomial functor is only applied to finite setoids")

        carrier: list[tuple[Any, Assignment]] = []

        for a in family.base.carrier:
            fiber = family.fiber(a)
            limits.check_candidates(len(target) ** len(fiber), f"assignments over {a!r}")

            related = [
                (i, j)
                for i, b in enumerate(fiber.carrier)
                for j, b2 in enumerate(fiber.carrier)
                if i != j and fiber.eq(b, b2)
            ]
            carrier += [
                (a, k)
                for k in product(target.carrier, repeat=len(fiber))
                if all(target.eq(k[i], k[j]) for i, j in related)
            ]

        self.family = family
        self.target = target
        super().__init__(carrier, label=f"P({target!r})")

    def eq(self, x: Any, y: Any) -> bool:
        return poly_eq(self.family, self.target.eq, x, y)


def poly_apply(
    family: SetoidFamily, x: Setoid, limits: Limits = DEFAULT_LIMITS
) -> PolyAppliedSetoid:
    return PolyAppliedSetoid(family, x, limits)


def poly_map(family: SetoidFamily, h: ExtFun, limits: Limits = DEFAULT_LIMITS) -> ExtFun:
    """``P_B h``: ``(a, k) ↦ (a, h ∘ k)``."""
    dom, cod = poly_apply(family, h.dom, limits), poly_apply(family, h.cod, limits)
    return ExtFun(dom, cod, tuple((a, tuple(h(x) for x in k)) for a, k in dom.carrier))


def validate_algebra(alg: Algebra, limits: Limits = DEFAULT_LIMITS) -> Report:
    """Totality and extensionality of the structure map.

    Exhaustive for finite targets; the built-in integers are checked on the
    sample window of ``limits``.
    """

    target = alg.target
    values = (
        target
        if target.finite
        else ComputedSetoid(target.sample(limits), target.eq, label=f"{target!r} sample")
    )
    domain = poly_apply(alg.family, values, limits)

    report: Report = []
    outputs: dict[tuple[Any, Assignment], Any] = {}

    for pair in domain.carrier:
        try:
            outputs[pair] = alg(*pair)
        except AlgebraError as error:
            report.append(Violation(Law.TOTALITY, pair, str(error)))

    for p in outputs:
        for q in outputs:
            if domain.eq(p, q) and not target.eq(outputs[p], outputs[q]):
                report.append(
                    Violation(
                        Law.EXTENSIONALITY,
                        (p, q),
                        f"{p!r} ≈ {q!r} but {outputs[p]!r} ≉ {outputs[q]!r}",
                    )
                )

    logger.debug("%r: %d violations on %d arguments", alg, len(report), len(domain))
    return report


def fold(family: SetoidFamily, alg: Algebra, w: Tree) -> Any:
    """The initial algebra morphism at ``w``: ``fold(sup a f) = alg(a, fold ∘ f)``."""

    require_extensional(family, PerDecider(family), w)
    return fold_tree(w, lambda node, below: alg(node.name, tuple(below)))


@dataclass(frozen=True)
class CoherentFamily:
    """At ``tree``: one map per branch, on the immediate-subtree setoid of that child."""

    tree: Tree
    maps: tuple[Assignment, ...]


def check_coherent(family: SetoidFamily, target: Setoid, cf: CoherentFamily) -> Report:
    """Shape, extensionality and coherence of ``cf`` as violation data."""

    w = cf.tree
    fiber = family.fiber(w.name)
    report: Report = []

    if len(cf.maps) != len(w.children):
        return [
            Violation(Law.TOTALITY, (w,), f"{len(cf.maps)} maps for {len(w.children)} branches")
        ]

    for s, child, maps in zip(fiber.carrier, w.children, cf.maps):
        if len(maps) != len(family.fiber(child.name)):
            report.append(Violation(Law.TOTALITY, (s,), f"map at {s!r} has {len(maps)} values"))
        elif unknown := [value for value in maps if value not in target]:
            report.append(
                Violation(Law.UNKNOWN_ELEMENT, (s,), f"map at {s!r} mentions {unknown[0]!r}")
            )

    if report:
        return report

    for s, child, maps in zip(fiber.carrier, w.children, cf.maps):
        child_ims = ims_setoid(family, child)
        for i, r in enumerate(child_ims.carrier):
            for j, r2 in enumerate(child_ims.carrier):
                if child_ims.eq(r, r2) and not target.eq(maps[i], maps[j]):
                    report.append(
                        Violation(
                            Law.EXTENSIONALITY,
                            (s, r, r2),
                            f"map at {s!r} separates {r!r} ≈ {r2!r}",
                        )
                    )

    ims = ims_setoid(family, w)

    for i, s in enumerate(ims.carrier):
        for j, s2 in enumerate(ims.carrier):
            if i == j or not ims.eq(s, s2):
                continue

            source, dest = w.children[i], w.children[j]
            transport = family.transport(source.name, dest.name)
            dest_fiber = family.fiber(dest.name)

            for position, r in enumerate(family.fiber(source.name).carrier):
                moved = cf.maps[j][dest_fiber.index(transport(r))]
                if not target.eq(cf.maps[i][position], moved):
                    report.append(
                        Violation(
                            Law.COHERENCE,
                            (s, s2, r),
                            f"maps at {s!r} and {s2!r} disagree on {r!r}: "
                            f"{cf.maps[i][position]!r} against {moved!r}",
                        )
                    )

    return report


def recursive_step(family: SetoidFamily, alg: Algebra, cf: CoherentFamily) -> Assignment:
    """``s ↦ alg(name of child s, F s)`` on ``ImS w``."""

    require_extensional(family, PerDecider(family), cf.tree)

    if report := check_coherent(family, alg.target, cf):
        first = report[0]
        raise IncoherentFamilyError(
            f"incoherent family at {cf.tree}: {first.message}", first.witness[:2]
        )

    return tuple(alg(child.name, maps) for child, maps in zip(cf.tree.children, cf.maps))


def transport_cohfamily(family: SetoidFamily, cf: CoherentFamily, w2: Tree) -> CoherentFamily:
    """Move a coherent family at ``w`` to a per-related ``w2``.

    The map at ``s'`` is the map at ``transport⁻¹(s')`` precomposed with the
    transport between the corresponding children.
    """

    w = cf.tree
    if not per(family, w, w2):
        raise NotRelatedError(f"{w} and {w2} are not related")

    back, fiber = family.transport(w2.name, w.name), family.fiber(w.name)
    maps: list[Assignment] = []

    for s2, child2 in zip(family.fiber(w2.name).carrier, w2.children):
        position = fiber.index(back(s2))
        child = w.children[position]
        inner, source = family.transport(child2.name, child.name), family.fiber(child.name)
        maps.append(
            tuple(
                cf.maps[position][source.index(inner(r))]
                for r in family.fiber(child2.name).carrier
            )
        )

    return CoherentFamily(w2, tuple(maps))


def rec_ims(family: SetoidFamily, alg: Algebra, w: Tree) -> Assignment:
    """The recursively defined map on ``ImS w``, by recursion on ``w``."""

    require_extensional(family, PerDecider(family), w)
    return fold_tree(
        w, lambda node, below: recursive_step(family, alg, CoherentFamily(node, tuple(below)))
    )


def restrict(family: SetoidFamily, h: ExtFun, w: Tree) -> Assignment:
    """``h`` restricted to the immediate subtrees of ``w``."""

    if missing := [child for child in w.children if child not in h.dom]:
        raise DepthExceededError(f"{missing[0]} lies outside {h.dom!r}")
    return tuple(h(child) for child in w.children)


@dataclass(frozen=True, eq=False)
class MapFamily:
    """A map on ``ImS w`` for every tree ``w`` of a truncation."""

    universe: TruncatedWSetoid
    maps: Mapping[Tree, Assignment]

    def __getitem__(self, w: Tree) -> Assignment:
        try:
            return self.maps[w]
        except KeyError as error:
            raise DepthExceededError(f"{w} lies outside {self.universe!r}") from error


def restrictions(family: SetoidFamily, h: ExtFun) -> MapFamily:
    universe = h.dom
    if not isinstance(universe, TruncatedWSetoid):
        raise WSetoidError(f"{universe!r} is not a truncation of W")
    return MapFamily(universe, {w: restrict(family, h, w) for w in universe.carrier})


def comprehend(
    family: SetoidFamily, alg: Algebra, maps: MapFamily, w: Tree
) -> tuple[Any, Assignment]:
    """``(n w, F w)``, after checking ``F`` is stable across trees related to ``w``."""

    universe, fiber, own = maps.universe, family.fiber(w.name), maps[w]

    for w2 in universe.carrier:
        if w2 == w or not universe.eq(w, w2):
            continue

        transport, fiber2, other = (
            family.transport(w.name, w2.name),
            family.fiber(w2.name),
            maps[w2],
        )
        if not all(
            alg.target.eq(value, other[fiber2.index(transport(s))])
            for s, value in zip(fiber.carrier, own)
        ):
            raise IncoherentFamilyError(
                f"maps at {w} and {w2} disagree through the transport", (w, w2)
            )

    return w.name, own


def from_family(family: SetoidFamily, alg: Algebra, maps: MapFamily) -> ExtFun:
    """``alg ∘ comprehend F`` tabulated over the truncation of ``F``."""
    return ExtFun(
        maps.universe,
        alg.target,
        tuple(alg(*comprehend(family, alg, maps, w)) for w in maps.universe.carrier),
    )


def recursive_family(
    family: SetoidFamily, alg: Algebra, universe: TruncatedWSetoid
) -> MapFamily:
    return MapFamily(universe, {w: rec_ims(family, alg, w) for w in universe.carrier})


def fold_map(family: SetoidFamily, alg: Algebra, universe: TruncatedWSetoid) -> ExtFun:
    return ExtFun(universe, alg.target, tuple(fold(family, alg, w) for w in universe.carrier))


def initial_morphism(family: SetoidFamily, alg: Algebra, universe: TruncatedWSetoid) -> ExtFun:
    """The morphism built as ``alg ∘ comprehend`` of the recursively defined maps."""
    return from_family(family, alg, recursive_family(family, alg, universe))


@dataclass(frozen=True)
class MorphismCheck:
    holds: bool
    counterexample: Tree | None = None

    def __bool__(self) -> bool:
        return self.holds


def is_algebra_morphism(
    family: SetoidFamily, alg: Algebra, h: ExtFun, depth: int | None = None
) -> MorphismCheck:
    """Check ``h(sup a f) ≈ alg(a, h ∘ f)`` on every tree of the truncation up to ``depth``."""

    universe = h.dom
    if not isinstance(universe, TruncatedWSetoid):
        raise WSetoidError(f"{universe!r} is not a truncation of W")

    depth = universe.depth if depth is None else depth
    if depth > universe.depth:
        raise DepthExceededError(f"depth {depth} exceeds the truncation at {universe.depth}")

    for w in universe.carrier:
        if w.depth <= depth and not alg.target.eq(h(w), alg(w.name, restrict(family, h, w))):
            logger.debug("%r is not a morphism into %r at %s", h, alg, w)
            return MorphismCheck(False, w)

    return MorphismCheck(True)


def uniqueness_check(
    family: SetoidFamily, alg: Algebra, h: ExtFun, depth: int | None = None
) -> bool:
    """Whether the algebra morphism ``h`` agrees with ``fold``."""

    check = is_algebra_morphism(family, alg, h, depth)
    if not check:
        raise NotAMorphismError(f"the morphism square fails at {check.counterexample}")

    depth = h.dom.depth if depth is None else depth
    return all(
        alg.target.eq(value, fold(family, alg, w))
        for w, value in h.items()
        if w.depth <= depth
    )


def enumerate_morphisms(
    family: SetoidFamily,
    alg: Algebra,
    universe: TruncatedWSetoid,
    limits: Limits = DEFAULT_LIMITS,
) -> tuple[ExtFun, ...]:
    """Every extensional map on the truncation that is an algebra morphism into ``alg``."""

    target = alg.target
    if not target.finite:
        raise WSetoidError("morphisms are only enumerated into finite targets")

    limits.check_candidates(len(target) ** len(universe), "maps")

    found = []
    for images in product(target.carrier, repeat=len(universe)):
        h = ExtFun(universe, target, images)
        if not validate_extfun(h) and is_algebra_morphism(family, alg, h):
            found.append(h)

    logger.debug("%d morphisms from %r into %r", len(found), universe, alg)
    return tuple(found)
