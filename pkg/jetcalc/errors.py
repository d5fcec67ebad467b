from __future__ import annotations

from typing import Iterable, Optional, Tuple


class JetcalcError(RuntimeError):
    kind = "error"


class GeometryError(JetcalcError):
    kind = "geometry"


class DomainError(JetcalcError):
    kind = "domain"


class LevelMismatchError(JetcalcError):
    kind = "level-mismatch"


class UndefinedDominantError(JetcalcError):
    kind = "undefined-dominant"


class DimensionMismatchError(JetcalcError):
    kind = "dimension-mismatch"


class PreconditionError(JetcalcError):
    kind = "precondition"


class UsageError(JetcalcError):
    kind = "usage"


class ParseError(JetcalcError):
    kind = "parse"

    def __init__(self, message: str, line: int, column: int, expected: Iterable[str] = ()) -> None:
        super().__init__(message)
        self.line = line
        self.column = column
        self.expected = sorted(set(expected))


class LevelError(JetcalcError):
    kind = "level"

    def __init__(self, message: str, atom: str, position: Optional[Tuple[int, int]] = None) -> None:
        super().__init__(message)
        self.atom = atom
        self.position = position
