"""
wsetoid.entities
====================================
Value types shared by all wsetoid modules.

|license-info|
"""

from __future__ import annotations

import logging

from dataclasses import dataclass, field
from logging import Logger
from os import environ
from typing import Any, List, Tuple

from wsetoid.const import (
    MAX_CANDIDATES,
    MAX_CANDIDATES_ENV,
    MAX_CARRIER,
    MAX_CARRIER_ENV,
    SAMPLE_WINDOW,
)
from wsetoid.enums import Law
from wsetoid.exceptions import EnumerationLimitError


# get a logger
logger: Logger = logging.getLogger(__name__)

# a map tabulated positionally against the carrier order of its domain
Assignment = Tuple[Any, ...]


@dataclass(frozen=True)
class Violation:
    """One instance of a broken law."""

    law: Law
    witness: tuple[Any, ...]
    message: str = ""

    def __str__(self) -> str:
        return f"{self.law}: {self.message}" if self.message else str(self.law)


Report = List[Violation]


def _env_limit(name: str, default: int) -> int:
    if (raw := environ.get(name)) is None:
        return default

    try:
        value = int(raw)
    except ValueError:
        value = 0

    if value <= 0:
        logger.warning("ignoring %s=%r, expected a positive integer", name, raw)
        return default

    return value


@dataclass(frozen=True)
class Limits:
    """Desk-scale guardrails for enumerations."""

    max_carrier: int = MAX_CARRIER
    max_candidates: int = MAX_CANDIDATES
    sample_window: tuple[int, int] = field(default=SAMPLE_WINDOW)

    @classmethod
    def from_env(cls) -> Limits:
        """Defaults, overridden by the environment where set."""
        return cls(
            max_carrier=_env_limit(MAX_CARRIER_ENV, MAX_CARRIER),
            max_candidates=_env_limit(MAX_CANDIDATES_ENV, MAX_CANDIDATES),
        )

    def check_candidates(self, count: int, what: str) -> None:
        logger.debug("enumerating %d candidate %s (limit %d)", count, what, self.max_candidates)
        if count > self.max_candidates:
            raise EnumerationLimitError(
                f"{count} candidate {what} exceed the limit of {self.max_candidates}"
            )

    def check_carrier(self, size: int, what: str = "carrier") -> None:
        if size > self.max_carrier:
            raise EnumerationLimitError(
                f"{what} of size {size} exceeds the limit of {self.max_carrier}"
            )


DEFAULT_LIMITS = Limits()
