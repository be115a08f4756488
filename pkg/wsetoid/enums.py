from enum import IntEnum


class WEnum(IntEnum):
    """wsetoid base enum."""

    def __str__(self) -> str:
        return self.name.lower()  # pylint: disable=no-member


class ExitCode(WEnum):
    """Process exit codes of the cli."""

    OK = 0
    SEMANTIC = 1
    PARSE = 2
    LIMIT = 3


class Law(WEnum):
    """Laws and disciplines a validation report can flag."""

    REFLEXIVITY = 1
    SYMMETRY = 2
    TRANSITIVITY = 3
    EXTENSIONALITY = 4
    TOTALITY = 5
    MISSING_TRANSPORT = 6
    TRANSPORT_IDENTITY = 7
    TRANSPORT_COMPOSITION = 8
    TRANSPORT_INVERSE = 9
    ARITY = 10
    UNKNOWN_NAME = 11
    INDEX = 12
    UNKNOWN_ELEMENT = 13
    COHERENCE = 14


class SetoidKind(WEnum):
    """How the equality of a setoid is given."""

    TABLE = 1
    DISCRETE = 2
    CODISCRETE = 3
    COMPUTED = 4
    BUILTIN = 5


class AlgebraKind(WEnum):
    """How the structure map of an algebra is given."""

    TABLE = 1
    BUILTIN = 2
    COMPUTED = 3
