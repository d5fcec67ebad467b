from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

from .errors import DomainError, GeometryError


@dataclass(frozen=True)
class DegeneracyInput:
    N: int
    c: int

    def __post_init__(self) -> None:
        if self.N < 1:
            raise GeometryError(f"need N >= 1, got {self.N}")
        if not 1 <= self.c <= self.N:
            raise GeometryError(f"need 1 <= c <= N, got c={self.c}, N={self.N}")


def moving_dimension(n: int, m: int, N: int) -> int:
    """Dimension of g.V meet W for generic g, with dim V = n, dim W = m in P^N."""
    if N < 0 or not 0 <= n <= N or not 0 <= m <= N:
        raise DomainError(f"need 0 <= n, m <= N, got n={n}, m={m}, N={N}")
    return max(n + m - N, 0)


@dataclass(frozen=True)
class InductionStep:
    hypersurfaces: int
    previous: int
    moved: int
    raw: int

    def to_json(self) -> Dict[str, int]:
        return {"c": self.hypersurfaces, "previous": self.previous, "moved": self.moved, "raw": self.raw}


@dataclass(frozen=True)
class DegeneracyReport:
    N: int
    c: int
    locus_dim: int
    hyperbolic: bool
    steps: Tuple[InductionStep, ...] = field(default=(), compare=False)

    @property
    def empty(self) -> bool:
        return self.locus_dim < 0

    @property
    def codimension(self) -> int:
        """Codimension of the locus inside X, at least 2 when nonempty."""
        return (self.N - self.c) - self.locus_dim

    @property
    def consistent(self) -> bool:
        return self.hyperbolic == (self.locus_dim <= 0) and all(
            s.moved == max(s.raw, 0) for s in self.steps
        )

    def to_json(self) -> Dict[str, Any]:
        return {"N": self.N, "c": self.c, "locus_dim": self.locus_dim, "hyperbolic": self.hyperbolic}


def induction_steps(N: int, c: int) -> List[InductionStep]:
    """Intersect c moved copies of the (N-3)-dimensional locus of one hypersurface."""
    steps: List[InductionStep] = []
    current = N - 3
    for j in range(2, c + 1):
        previous = current
        raw = (N - 3) + previous - N
        moved = moving_dimension(N - 3, previous, N) if previous >= 0 and N >= 3 else 0
        steps.append(InductionStep(j, previous, moved, raw))
        current = raw
    return steps


def degeneracy_report(inp: DegeneracyInput) -> DegeneracyReport:
    locus = inp.N - 3 * inp.c
    steps = tuple(induction_steps(inp.N, inp.c))
    return DegeneracyReport(inp.N, inp.c, locus, 3 * inp.c >= inp.N, steps)
