from __future__ import annotations

from typing import Any

from wsetoid.enums import ExitCode


class WSetoidError(Exception):
    """General wsetoid error occurred."""

    exit_code: ExitCode = ExitCode.SEMANTIC


class WSetoidParseError(WSetoidError):
    """When a document does not match the expected schema."""

    exit_code = ExitCode.PARSE

    def __init__(self, message: str, position: str = "$") -> None:
        super().__init__(f"{position}: {message}")
        self.position = position


class MalformedTreeError(WSetoidParseError):
    """When a tree does not match the arities of its signature."""


class EnumerationLimitError(WSetoidError):
    """When an enumeration would exceed the configured limits."""

    exit_code = ExitCode.LIMIT


class NestingLimitError(WSetoidError):
    """When a document nests deeper than the interpreter stack allows."""

    exit_code = ExitCode.LIMIT


class DuplicateElementError(WSetoidError):
    """When a carrier lists the same identifier twice."""


class UnknownElementError(WSetoidError):
    """When an element is not in the carrier it is looked up in."""


class NotTotalError(WSetoidError):
    """When a tabulated map misses part of its domain."""


class ObjectMismatchError(WSetoidError):
    """When two maps do not compose."""


class NonExtensionalTreeError(WSetoidError):
    """When an operation needs an extensional tree."""


class NonExtensionalBranchingError(NonExtensionalTreeError):
    """When a branching map sends related branches to unrelated trees."""

    def __init__(self, message: str, pair: tuple[Any, Any]) -> None:
        super().__init__(message)
        self.pair = pair


class NotRelatedError(WSetoidError):
    """When two trees were expected to be per-related but are not."""


class IncoherentFamilyError(WSetoidError):
    """When a family of maps is not stable under transport."""

    def __init__(self, message: str, pair: tuple[Any, Any]) -> None:
        super().__init__(message)
        self.pair = pair


class InvalidWitnessError(WSetoidError):
    """When a witness tree does not validate against its signature."""


class WitnessMismatchError(InvalidWitnessError):
    """When two witnesses do not share their middle tree."""


class DepthExceededError(WSetoidError):
    """When a tree is deeper than the truncation it is looked up in."""


class NotAMorphismError(WSetoidError):
    """When a map was expected to be an algebra morphism."""


class AlgebraError(WSetoidError):
    """When an algebra cannot evaluate its structure map."""


class InvalidSetoidError(WSetoidError):
    """When a setoid or family breaks the laws it is required to satisfy."""
