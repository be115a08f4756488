"""
wsetoid.entities.setoids
====================================
Finite setoids, extensional functions and proof-irrelevant setoid families.

A setoid is a carrier together with an equivalence relation given as data.
Proof terms are not stored: relatedness is a decidable predicate, and the
transport of a family is keyed on the related pair rather than on a proof.

|license-info|
"""

from __future__ import annotations

import logging

from abc import ABC, abstractmethod
from collections.abc import Callable, Iterable, Iterator, Mapping
from dataclasses import dataclass
from itertools import product
from logging import Logger
from typing import Any

from wsetoid.const import BUILTIN_INT
from wsetoid.entities import DEFAULT_LIMITS, Assignment, Limits, Report, Violation
from wsetoid.enums import Law, SetoidKind
from wsetoid.exceptions import (
    DuplicateElementError,
    NotRelatedError,
    NotTotalError,
    ObjectMismatchError,
    UnknownElementError,
    WSetoidError,
)


# get a logger
logger: Logger = logging.getLogger(__name__)


class Setoid(ABC):
    """A carrier with an equivalence relation."""

    kind: SetoidKind = SetoidKind.COMPUTED

    def __init__(self, carrier: Iterable[Any], label: str | None = None) -> None:
        self._carrier: tuple[Any, ...] = tuple(carrier)
        self._index: dict[Any, int] = {}

        for position, element in enumerate(self._carrier):
            if element in self._index:
                raise DuplicateElementError(f"duplicate element {element!r} in carrier")
            self._index[element] = position

        self.label = label

    def __repr__(self) -> str:
        name = self.label or type(self).__name__
        shown = ", ".join(repr(x) for x in self._carrier[:8])
        return f"{name}({shown}{', …' if len(self._carrier) > 8 else ''})"

    def __len__(self) -> int:
        return len(self._carrier)

    def __iter__(self) -> Iterator[Any]:
        return iter(self._carrier)

    def __contains__(self, element: Any) -> bool:
        try:
            return element in self._index
        except TypeError:
            return False

    @property
    def carrier(self) -> tuple[Any, ...]:
        return self._carrier

    @property
    def finite(self) -> bool:
        return True

    def index(self, element: Any) -> int:
        """Position of ``element`` in the carrier order."""
        try:
            return self._index[element]
        except (KeyError, TypeError) as error:
            raise UnknownElementError(f"{element!r} is not in {self!r}") from error

    def sample(self, limits: Limits = DEFAULT_LIMITS) -> tuple[Any, ...]:
        """Elements the laws are checked on; the whole carrier for finite setoids."""
        return self._carrier

    @abstractmethod
    def eq(self, x: Any, y: Any) -> bool:
        """Decide ``x ≈ y``."""


class TableSetoid(Setoid):
    """Setoid whose relation is an explicit table of related pairs."""

    kind = SetoidKind.TABLE

    def __init__(
        self, carrier: Iterable[Any], pairs: Iterable[tuple[Any, Any]], label: str | None = None
    ) -> None:
        super().__init__(carrier, label=label)
        self.pairs: frozenset[tuple[Any, Any]] = frozenset((x, y) for x, y in pairs)

        for x, y in self.pairs:
            if x not in self or y not in self:
                raise UnknownElementError(f"pair ({x!r}, {y!r}) mentions an unknown element")

    def eq(self, x: Any, y: Any) -> bool:
        return (x, y) in self.pairs


class DiscreteSetoid(Setoid):
    kind = SetoidKind.DISCRETE

    def eq(self, x: Any, y: Any) -> bool:
        return bool(x == y)


class CodiscreteSetoid(Setoid):
    kind = SetoidKind.CODISCRETE

    def eq(self, x: Any, y: Any) -> bool:
        return True


class ComputedSetoid(Setoid):
    """Finite setoid whose relation is a computable predicate."""

    def __init__(
        self,
        carrier: Iterable[Any],
        relation: Callable[[Any, Any], bool],
        label: str | None = None,
    ) -> None:
        super().__init__(carrier, label=label)
        self._relation = relation

    def eq(self, x: Any, y: Any) -> bool:
        return bool(self._relation(x, y))


class IntegerSetoid(Setoid):
    """The built-in setoid of integers with decidable equality.

    Only permitted as a fold target; its laws are spot-checked on a window.
    """

    kind = SetoidKind.BUILTIN

    def __init__(self) -> None:
        super().__init__((), label=BUILTIN_INT)

    def __repr__(self) -> str:
        return "IntegerSetoid()"

    def __len__(self) -> int:
        raise WSetoidError("the integer setoid has no finite size")

    def __contains__(self, element: Any) -> bool:
        return isinstance(element, int) and not isinstance(element, bool)

    @property
    def carrier(self) -> tuple[Any, ...]:
        raise WSetoidError("the integer setoid has no finite carrier")

    @property
    def finite(self) -> bool:
        return False

    def index(self, element: Any) -> int:
        raise WSetoidError("elements of the integer setoid have no position")

    def sample(self, limits: Limits = DEFAULT_LIMITS) -> tuple[Any, ...]:
        low, high = limits.sample_window
        return tuple(range(low, high + 1))

    def eq(self, x: Any, y: Any) -> bool:
        return bool(x == y)


INTEGERS = IntegerSetoid()


def discrete(ids: Iterable[Any], limits: Limits = DEFAULT_LIMITS) -> DiscreteSetoid:
    """The setoid on ``ids`` related by identity."""
    setoid = DiscreteSetoid(ids)
    limits.check_carrier(len(setoid))
    return setoid


def codiscrete(ids: Iterable[Any], limits: Limits = DEFAULT_LIMITS) -> CodiscreteSetoid:
    """The setoid on ``ids`` where everything is related."""
    setoid = CodiscreteSetoid(ids)
    limits.check_carrier(len(setoid))
    return setoid


def validate_setoid(setoid: Setoid, limits: Limits = DEFAULT_LIMITS) -> Report:
    """Check reflexivity, symmetry and transitivity on every (sampled) element."""

    elements = setoid.sample(limits)
    report: Report = []

    for x in elements:
        if not setoid.eq(x, x):
            report.append(Violation(Law.REFLEXIVITY, (x,), f"{x!r} is not related to itself"))

    related = [(x, y) for x in elements for y in elements if setoid.eq(x, y)]

    for x, y in related:
        if not setoid.eq(y, x):
            report.append(
                Violation(Law.SYMMETRY, (x, y), f"{x!r} ≈ {y!r} but not {y!r} ≈ {x!r}")
            )

    for x, y in related:
        for z in elements:
            if setoid.eq(y, z) and not setoid.eq(x, z):
                report.append(
                    Violation(
                        Law.TRANSITIVITY,
                        (x, y, z),
                        f"{x!r} ≈ {y!r} ≈ {z!r} but not {x!r} ≈ {z!r}",
                    )
                )

    return report


def related_pairs(setoid: Setoid) -> list[tuple[Any, Any]]:
    """All related ordered pairs of a finite setoid, in carrier order."""
    return [(x, y) for x in setoid.carrier for y in setoid.carrier if setoid.eq(x, y)]


def same_setoid(left: Setoid, right: Setoid) -> bool:
    """Same carrier in the same order and the same relation."""
    if left is right:
        return True

    if not (left.finite and right.finite) or left.carrier != right.carrier:
        return False

    return all(left.eq(x, y) == right.eq(x, y) for x in left.carrier for y in left.carrier)


@dataclass(frozen=True)
class ExtFun:
    """A total map between setoids, tabulated against the carrier order of ``dom``."""

    dom: Setoid
    cod: Setoid
    images: Assignment

    def __post_init__(self) -> None:
        if len(self.images) != len(self.dom):
            raise NotTotalError(
                f"map has {len(self.images)} images for a domain of size {len(self.dom)}"
            )

        for image in self.images:
            if image not in self.cod:
                raise UnknownElementError(f"image {image!r} is not in {self.cod!r}")

    def __call__(self, element: Any) -> Any:
        return self.images[self.dom.index(element)]

    def __repr__(self) -> str:
        return f"ExtFun({', '.join(f'{x!r}↦{y!r}' for x, y in self.items())})"

    def items(self) -> Iterator[tuple[Any, Any]]:
        return zip(self.dom.carrier, self.images)

    @classmethod
    def from_mapping(cls, dom: Setoid, cod: Setoid, mapping: Mapping[Any, Any]) -> ExtFun:
        missing = [x for x in dom.carrier if x not in mapping]
        if missing:
            raise NotTotalError(f"map is not defined on {missing!r}")
        return cls(dom, cod, tuple(mapping[x] for x in dom.carrier))

    @classmethod
    def from_callable(cls, dom: Setoid, cod: Setoid, fn: Callable[[Any], Any]) -> ExtFun:
        return cls(dom, cod, tuple(fn(x) for x in dom.carrier))


def identity(setoid: Setoid) -> ExtFun:
    return ExtFun(setoid, setoid, setoid.carrier)


def compose(g: ExtFun, f: ExtFun) -> ExtFun:
    """``g ∘ f``; the codomain of ``f`` must be the domain of ``g``."""
    if not same_setoid(f.cod, g.dom):
        raise ObjectMismatchError(f"cannot compose: {f.cod!r} is not {g.dom!r}")
    return ExtFun(f.dom, g.cod, tuple(g(y) for y in f.images))


def pointwise_eq(f: ExtFun, g: ExtFun) -> bool:
    """``f ≈ g`` in the setoid of extensional functions."""
    if not same_setoid(f.dom, g.dom):
        return False
    return all(f.cod.eq(f(x), g(x)) for x in f.dom.carrier)


def validate_extfun(f: ExtFun) -> Report:
    """Check that related elements have related images."""

    report: Report = []
    carrier = f.dom.carrier

    for i, x in enumerate(carrier):
        for y in carrier[i:]:
            if f.dom.eq(x, y) and not f.cod.eq(f(x), f(y)):
                report.append(
                    Violation(
                        Law.EXTENSIONALITY,
                        (x, y),
                        f"{x!r} ≈ {y!r} but {f(x)!r} ≉ {f(y)!r}",
                    )
                )

    return report


def function_setoid(x: Setoid, y: Setoid, limits: Limits = DEFAULT_LIMITS) -> ComputedSetoid:
    """The setoid ``X ⇒ Y`` of extensional functions, by brute-force filtering."""

    if not (x.finite and y.finite):
        raise WSetoidError("function setoids need finite domain and codomain")

    limits.check_candidates(len(y) ** len(x), "maps")

    related = [
        (i, j) for i, a in enumerate(x.carrier) for j, b in enumerate(x.carrier) if x.eq(a, b)
    ]

    maps = [
        ExtFun(x, y, images)
        for images in product(y.carrier, repeat=len(x))
        if all(y.eq(images[i], images[j]) for i, j in related)
    ]

    return ComputedSetoid(maps, pointwise_eq, label=f"({x!r} ⇒ {y!r})")


def fiber_setoid(f: ExtFun, a: Any) -> ComputedSetoid:
    """The setoid fibre ``{b | f b ≈ a}`` with the restricted equality of ``dom f``."""

    if a not in f.cod:
        raise UnknownElementError(f"{a!r} is not in {f.cod!r}")

    return ComputedSetoid(
        (b for b in f.dom.carrier if f.cod.eq(f(b), a)), f.dom.eq, label=f"fiber({a!r})"
    )


class SetoidFamily:
    """A setoid-valued family over a base setoid with pair-keyed transports."""

    def __init__(
        self,
        base: Setoid,
        fibers: Mapping[Any, Setoid],
        transports: Mapping[tuple[Any, Any], ExtFun] | None = None,
        label: str | None = None,
    ) -> None:
        self.base = base
        self.label = label

        if missing := [a for a in base.carrier if a not in fibers]:
            raise UnknownElementError(f"no fiber given for {missing!r}")

        self._fibers: dict[Any, Setoid] = {a: fibers[a] for a in base.carrier}
        self._transports: dict[tuple[Any, Any], ExtFun] = {}

        for (a, a2), transport in (transports or {}).items():
            if a not in base or a2 not in base:
                raise UnknownElementError(f"transport ({a!r}, {a2!r}) over unknown elements")
            if not (
                same_setoid(transport.dom, self._fibers[a])
                and same_setoid(transport.cod, self._fibers[a2])
            ):
                raise ObjectMismatchError(f"transport ({a!r}, {a2!r}) does not connect the fibers")
            self._transports[(a, a2)] = transport

        # a missing diagonal transport is the identity
        for a in base.carrier:
            if (a, a) not in self._transports:
                self._transports[(a, a)] = identity(self._fibers[a])

        logger.debug("initialization completed | %r: %d transports", self, len(self._transports))

    def __repr__(self) -> str:
        return f"SetoidFamily({self.label or repr(self.base)})"

    @property
    def transports(self) -> dict[tuple[Any, Any], ExtFun]:
        return dict(self._transports)

    def fiber(self, a: Any) -> Setoid:
        try:
            return self._fibers[a]
        except (KeyError, TypeError) as error:
            raise UnknownElementError(f"{a!r} is not in the base {self.base!r}") from error

    def has_transport(self, a: Any, a2: Any) -> bool:
        return (a, a2) in self._transports

    def transport(self, a: Any, a2: Any) -> ExtFun:
        """The transport ``fiber(a) → fiber(a2)`` along ``a ≈ a2``."""
        try:
            return self._transports[(a, a2)]
        except KeyError as error:
            raise NotRelatedError(f"no transport from {a!r} to {a2!r}") from error


def constant_family(base: Setoid, fiber: Setoid, label: str | None = None) -> SetoidFamily:
    """The family with the same fiber everywhere and identity transports."""
    return SetoidFamily(
        base,
        {a: fiber for a in base.carrier},
        {pair: identity(fiber) for pair in related_pairs(base)},
        label=label,
    )


def validate_family(family: SetoidFamily, limits: Limits = DEFAULT_LIMITS) -> Report:
    """Check base and fibers, then the identity, composition and inverse transport laws."""

    base = family.base
    report: Report = validate_setoid(base, limits)

    for a in base.carrier:
        report += validate_setoid(family.fiber(a), limits)

    related = related_pairs(base)

    for a, a2 in related:
        if not family.has_transport(a, a2):
            report.append(
                Violation(Law.MISSING_TRANSPORT, (a, a2), f"no transport from {a!r} to {a2!r}")
            )
            continue

        for violation in validate_extfun(family.transport(a, a2)):
            report.append(
                Violation(Law.EXTENSIONALITY, (a, a2, *violation.witness), violation.message)
            )

    for a in base.carrier:
        if not family.has_transport(a, a):
            continue
        fiber, transport = family.fiber(a), family.transport(a, a)
        for x in fiber.carrier:
            if not fiber.eq(transport(x), x):
                report.append(
                    Violation(
                        Law.TRANSPORT_IDENTITY,
                        (a, x),
                        f"transport({a!r}, {a!r}) moves {x!r} to {transport(x)!r}",
                    )
                )

    for a, a2 in related:
        for a3 in base.carrier:
            if not (
                base.eq(a2, a3)
                and family.has_transport(a, a2)
                and family.has_transport(a2, a3)
                and family.has_transport(a, a3)
            ):
                continue
            first, second = family.transport(a, a2), family.transport(a2, a3)
            direct, fiber = family.transport(a, a3), family.fiber(a3)
            for x in family.fiber(a).carrier:
                if not fiber.eq(second(first(x)), direct(x)):
                    report.append(
                        Violation(
                            Law.TRANSPORT_COMPOSITION,
                            (a, a2, a3, x),
                            f"going {a!r}→{a2!r}→{a3!r} sends {x!r} to {second(first(x))!r}, "
                            f"going {a!r}→{a3!r} sends it to {direct(x)!r}",
                        )
                    )

    for a, a2 in related:
        if not (family.has_transport(a, a2) and family.has_transport(a2, a)):
            continue
        there, back, fiber = family.transport(a, a2), family.transport(a2, a), family.fiber(a)
        for x in fiber.carrier:
            if not fiber.eq(back(there(x)), x):
                report.append(
                    Violation(
                        Law.TRANSPORT_INVERSE,
                        (a, a2, x),
                        f"{x!r} comes back from {a2!r} as {back(there(x))!r}",
                    )
                )

    return report


def function_to_family(f: ExtFun) -> SetoidFamily:
    """The family of setoid fibres of ``f``; transports are identities on carriers."""

    fibers = {a: fiber_setoid(f, a) for a in f.cod.carrier}
    transports = {
        (a, a2): ExtFun(fibers[a], fibers[a2], fibers[a].carrier)
        for a, a2 in related_pairs(f.cod)
    }
    return SetoidFamily(f.cod, fibers, transports, label=f"fibers of {f!r}")


def family_to_function(family: SetoidFamily, limits: Limits = DEFAULT_LIMITS) -> ExtFun:
    """First projection out of the total setoid ``Σ a. fiber(a)``.

    ``(a, x) ≈ (a', x')`` iff ``a ≈ a'`` and ``transport(a, a')(x) ≈ x'``.
    """

    base = family.base
    total = [(a, x) for a in base.carrier for x in family.fiber(a).carrier]
    limits.check_candidates(len(total), "elements of the total setoid")

    def related(left: tuple[Any, Any], right: tuple[Any, Any]) -> bool:
        (a, x), (a2, x2) = left, right
        return (
            base.eq(a, a2)
            and family.has_transport(a, a2)
            and family.fiber(a2).eq(family.transport(a, a2)(x), x2)
        )

    sigma = ComputedSetoid(total, related, label=f"Σ {family!r}")
    return ExtFun(sigma, base, tuple(a for a, _ in total))


def is_isomorphism(f: ExtFun, g: ExtFun) -> bool:
    """``g ∘ f ≈ id`` and ``f ∘ g ≈ id`` pointwise."""
    return pointwise_eq(compose(g, f), identity(f.dom)) and pointwise_eq(
        compose(f, g), identity(g.dom)
    )
