"""
wsetoid.entities.trees
====================================
Well-founded trees and indexed well-founded trees.

Trees can be far deeper than the interpreter stack, so every traversal in
here runs on an explicit stack.

|license-info|
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Any, TypeVar, Union


R = TypeVar("R")
S = TypeVar("S")

AnyTree = Union["Tree", "DTree"]


def fold_tree(root: Any, step: Callable[[Any, list[R]], R]) -> R:
    """``step(node, [results of the children])`` bottom-up, children left to right.

    Subtrees shared by identity are evaluated once.
    """

    done: dict[int, R] = {}
    pending: list[tuple[Any, bool]] = [(root, False)]

    while pending:
        node, expanded = pending.pop()
        if id(node) in done:
            continue
        if expanded:
            done[id(node)] = step(node, [done[id(child)] for child in node.children])
            continue
        pending.append((node, True))
        pending.extend((child, False) for child in reversed(node.children))

    return done[id(root)]


def build_tree(seed: S, expand: Callable[[S], Sequence[S]], make: Callable[[S, list[R]], R]) -> R:
    """Unfold ``seed`` depth-first: ``make(seed, [built children of expand(seed)])``.

    ``expand`` runs when a seed is reached, so checks inside it fire in
    pre-order, left to right.
    """

    frames: list[tuple[S, Sequence[S], list[R]]] = [(seed, expand(seed), [])]

    while True:
        current, seeds, built = frames[-1]
        if len(built) < len(seeds):
            child = seeds[len(built)]
            frames.append((child, expand(child), []))
            continue

        frames.pop()
        node = make(current, built)
        if not frames:
            return node
        frames[-1][2].append(node)


def _cached(root: AnyTree, attr: str, step: Callable[[Any, list[Any]], Any]) -> Any:
    # values live in the instance dict, next to the frozen fields
    if attr in root.__dict__:
        return root.__dict__[attr]

    pending = [root]
    while pending:
        node = pending[-1]
        missing = [child for child in node.children if attr not in child.__dict__]
        if missing:
            pending.extend(missing)
            continue
        if attr not in node.__dict__:
            node.__dict__[attr] = step(node, [child.__dict__[attr] for child in node.children])
        pending.pop()

    return root.__dict__[attr]


def _same_shape(left: AnyTree, right: AnyTree, fields: Callable[[Any], tuple[Any, ...]]) -> bool:
    pending = [(left, right)]
    while pending:
        a, b = pending.pop()
        if a is b:
            continue
        if hash(a) != hash(b) or len(a.children) != len(b.children) or fields(a) != fields(b):
            return False
        pending.extend(zip(a.children, b.children))
    return True


@dataclass(frozen=True)
class Tree:
    """A well-founded labelled tree ``sup(name, children)``.

    Children are positional: the k-th child hangs off the k-th element of the
    fiber over ``name`` in its carrier order.
    """

    name: Any
    children: tuple[Tree, ...] = ()

    def __hash__(self) -> int:
        return _cached(
            self, "_hash", lambda node, below: hash((node.name, len(below), *below))
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tree):
            return NotImplemented
        return _same_shape(self, other, lambda node: (node.name,))

    def __str__(self) -> str:
        parts: list[str] = []
        pending: list[Tree | str] = [self]

        while pending:
            item = pending.pop()
            if isinstance(item, str):
                parts.append(item)
            elif not item.children:
                parts.append(str(item.name))
            else:
                parts.append(f"{item.name}(")
                pending.append(")")
                for position in reversed(range(len(item.children))):
                    pending.append(item.children[position])
                    if position:
                        pending.append(", ")

        return "".join(parts)

    def __repr__(self) -> str:
        return f"Tree({self})"

    @property
    def depth(self) -> int:
        """0 for a leaf, otherwise one more than the deepest child."""
        return _cached(self, "_depth", lambda node, below: 1 + max(below) if below else 0)

    @property
    def size(self) -> int:
        return _cached(self, "_size", lambda node, below: 1 + sum(below))


def leaf(name: Any) -> Tree:
    return Tree(name)


@dataclass(frozen=True)
class DTree:
    """An indexed well-founded tree ``dsup(index, name, children)``."""

    index: Any
    name: Any
    children: tuple[DTree, ...] = ()

    def __hash__(self) -> int:
        return _cached(
            self,
            "_hash",
            lambda node, below: hash((node.index, node.name, len(below), *below)),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DTree):
            return NotImplemented
        return _same_shape(self, other, lambda node: (node.index, node.name))

    def __repr__(self) -> str:
        return f"DTree({self.index!r}, {self.name!r}, {len(self.children)} children)"

    @property
    def size(self) -> int:
        return _cached(self, "_size", lambda node, below: 1 + sum(below))
