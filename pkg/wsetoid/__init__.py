"""
wsetoid
====================================
The core module of wsetoid

|license-info|
"""

from __future__ import annotations

import logging

from importlib.metadata import version
from logging import Logger
from pathlib import Path
from typing import Any

from rich.console import Console

from wsetoid.algebra import Algebra, fold
from wsetoid.codec import load_algebra, load_family, load_tree, read_document
from wsetoid.const import DEFAULT_DEPTH
from wsetoid.dwtypes import check_dtree, per_witness, wper_signature
from wsetoid.entities import Limits, Report
from wsetoid.entities.setoids import SetoidFamily, validate_family
from wsetoid.entities.trees import DTree, Tree
from wsetoid.signatures import SIGNATURES
from wsetoid.wtypes import (
    TruncatedWSetoid,
    check_well_formed,
    enumerate_extensional,
    is_extensional,
    per,
)


__version__ = version(__name__)

# get a logger
logger: Logger = logging.getLogger(__name__)

console = Console(width=120)


class WSetoid:
    """Trees, equality witnesses and folds over one signature."""

    def __init__(self, family: SetoidFamily, limits: Limits | None = None) -> None:
        self.family = family
        self.limits = limits if limits is not None else Limits.from_env()

        logger.debug("initialization completed | %r, %r", family, self.limits)

    @classmethod
    def from_file(cls, path: str | Path, limits: Limits | None = None) -> WSetoid:
        limits = limits if limits is not None else Limits.from_env()
        return cls(load_family(read_document(path), limits=limits), limits)

    @classmethod
    def from_signature(cls, name: str, limits: Limits | None = None) -> WSetoid:
        """One of the built-in signatures, e.g. ``nat`` or ``bintree``."""
        return cls(SIGNATURES[name]().family, limits)

    def tree(self, path: str | Path) -> Tree:
        """Load a tree file and check it against the arities of the signature."""
        w = load_tree(read_document(path))
        check_well_formed(self.family, w)
        return w

    def algebra(self, path: str | Path) -> Algebra:
        return load_algebra(read_document(path), self.family, limits=self.limits)

    def validate(self) -> Report:
        return validate_family(self.family, self.limits)

    def eq(self, w: Tree, w2: Tree) -> bool:
        return per(self.family, w, w2)

    def check_ext(self, w: Tree) -> bool:
        return is_extensional(self.family, w)

    def fold(self, alg: Algebra, w: Tree) -> Any:
        return fold(self.family, alg, w)

    def enumerate(self, depth: int = DEFAULT_DEPTH) -> TruncatedWSetoid:
        return enumerate_extensional(self.family, depth, self.limits)

    def witness(self, w: Tree, w2: Tree) -> DTree | None:
        """A validated witness of ``w ≈ w2``, if there is one."""
        if (t := per_witness(self.family, w, w2)) is not None:
            check_dtree(wper_signature(self.family), (w, w2), t)
        return t
