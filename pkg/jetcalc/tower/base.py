from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, NamedTuple, Optional, Tuple, Union

from sympy.polys.rings import PolyElement, PolyRing

from ..errors import GeometryError, LevelMismatchError
from ..polyring import MultiPoly, poly_ring


@dataclass(frozen=True)
class TowerGeometry:
    N: int
    c: int

    def __post_init__(self) -> None:
        if self.c < 1:
            raise GeometryError(f"codimension must be >= 1, got c={self.c}")
        if self.N - self.c < 1:
            raise GeometryError(f"need n = N - c >= 1, got N={self.N}, c={self.c}")

    @property
    def n(self) -> int:
        return self.N - self.c

    @property
    def kappa(self) -> int:
        return -(-self.n // self.c)

    @property
    def b(self) -> int:
        return self.n - (self.kappa - 1) * self.c

    @property
    def ring(self) -> PolyRing:
        return poly_ring(self.c)

    def level_dim(self, k: int) -> int:
        if k < 0:
            raise GeometryError(f"tower levels start at 0, got {k}")
        return self.n + k * (self.n - 1)

    def level_dims(self, upto: Optional[int] = None) -> Tuple[int, ...]:
        top = self.kappa if upto is None else upto
        return tuple(self.level_dim(k) for k in range(top + 1))

    def hat(self, i: int) -> int:
        return i + self.n - 1

    def fundamental_degree(self) -> MultiPoly:
        """deg X = d1*...*dc, the value of the integral of h^n."""
        total = self.ring.one
        for g in self.ring.gens:
            total *= g
        return MultiPoly(total)

    def label(self) -> str:
        return f"N={self.N}, c={self.c}"

    def to_json(self) -> Dict[str, int]:
        return {"N": self.N, "c": self.c, "n": self.n, "kappa": self.kappa, "b": self.b}


class ChowMonomial(NamedTuple):
    u: Tuple[int, ...]
    h: int
    s0: Tuple[int, ...]

    @property
    def grading(self) -> int:
        return sum(self.u) + self.h + sum(self.s0)

    def __mul__(self, other: "ChowMonomial") -> "ChowMonomial":  # type: ignore[override]
        return ChowMonomial(
            tuple(a + b for a, b in zip(self.u, other.u)),
            self.h + other.h,
            tuple(sorted(self.s0 + other.s0)),
        )

    def padded(self, level: int) -> "ChowMonomial":
        return ChowMonomial(self.u + (0,) * (level - len(self.u)), self.h, self.s0)


def make_monomial(u: Tuple[int, ...], h: int = 0, s0: Tuple[int, ...] = ()) -> ChowMonomial:
    return ChowMonomial(tuple(u), h, tuple(sorted(i for i in s0 if i)))


Coefficient = Union[int, MultiPoly, PolyElement]


@dataclass(frozen=True)
class ChowClass:
    geometry: TowerGeometry
    level: int
    terms: Dict[ChowMonomial, PolyElement] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.level < 0:
            raise LevelMismatchError(f"tower levels start at 0, got {self.level}")
        top = self.geometry.level_dim(self.level)
        ring = self.geometry.ring
        clean: Dict[ChowMonomial, PolyElement] = {}
        for mono, coeff in self.terms.items():
            if len(mono.u) != self.level:
                raise LevelMismatchError(f"monomial {mono} does not live on level {self.level}")
            if mono.grading > top or not coeff:
                continue
            clean[mono] = ring.ring_new(coeff) if isinstance(coeff, PolyElement) else ring(coeff)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def zero(cls, geom: TowerGeometry, level: int) -> "ChowClass":
        return cls(geom, level, {})

    @classmethod
    def constant(cls, geom: TowerGeometry, level: int, value: Coefficient) -> "ChowClass":
        if isinstance(value, MultiPoly):
            value = value.raw
        return cls(geom, level, {make_monomial((0,) * level): value})

    @classmethod
    def one(cls, geom: TowerGeometry, level: int) -> "ChowClass":
        return cls.constant(geom, level, 1)

    @classmethod
    def u(cls, geom: TowerGeometry, level: int, j: int) -> "ChowClass":
        if not 1 <= j <= level:
            raise LevelMismatchError(f"u{j} does not exist on level {level}")
        exps = [0] * level
        exps[j - 1] = 1
        return cls(geom, level, {make_monomial(tuple(exps)): 1})

    @classmethod
    def h(cls, geom: TowerGeometry, level: int) -> "ChowClass":
        return cls(geom, level, {make_monomial((0,) * level, 1): 1})

    @classmethod
    def base_segre_factor(cls, geom: TowerGeometry, level: int, i: int) -> "ChowClass":
        return cls(geom, level, {make_monomial((0,) * level, 0, (i,)): 1})

    def __iter__(self) -> Iterator[Tuple[ChowMonomial, MultiPoly]]:
        return self.items()

    def items(self) -> Iterator[Tuple[ChowMonomial, MultiPoly]]:
        for mono, coeff in self.terms.items():
            yield mono, MultiPoly(coeff)

    def coefficient(self, mono: ChowMonomial) -> MultiPoly:
        return MultiPoly(self.terms.get(mono, self.geometry.ring.zero))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def gradings(self) -> List[int]:
        return sorted({m.grading for m in self.terms})

    def homogeneous_part(self, grading: int) -> "ChowClass":
        return ChowClass(
            self.geometry,
            self.level,
            {m: c for m, c in self.terms.items() if m.grading == grading},
        )

    def pullback(self, level: int) -> "ChowClass":
        if level < self.level:
            raise LevelMismatchError(f"cannot pull a level {self.level} class back to level {level}")
        if level == self.level:
            return self
        return ChowClass(self.geometry, level, {m.padded(level): c for m, c in self.terms.items()})

    def _align(self, other: Any) -> Tuple["ChowClass", "ChowClass"]:
        if not isinstance(other, ChowClass):
            other = ChowClass.constant(self.geometry, self.level, other)
        if other.geometry != self.geometry:
            raise LevelMismatchError(f"geometry mismatch: {self.geometry.label()} vs {other.geometry.label()}")
        level = max(self.level, other.level)
        return self.pullback(level), other.pullback(level)

    def __add__(self, other: Any) -> "ChowClass":
        left, right = self._align(other)
        terms = dict(left.terms)
        for mono, coeff in right.terms.items():
            terms[mono] = terms.get(mono, 0) + coeff
        return ChowClass(self.geometry, left.level, terms)

    __radd__ = __add__

    def __neg__(self) -> "ChowClass":
        return ChowClass(self.geometry, self.level, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Any) -> "ChowClass":
        left, right = self._align(other)
        return left + (-right)

    def __rsub__(self, other: Any) -> "ChowClass":
        return (-self) + other

    def __mul__(self, other: Any) -> "ChowClass":
        left, right = self._align(other)
        top = self.geometry.level_dim(left.level)
        terms: Dict[ChowMonomial, Any] = {}
        for m1, c1 in left.terms.items():
            g1 = m1.grading
            for m2, c2 in right.terms.items():
                if g1 + m2.grading > top:
                    continue
                mono = m1 * m2
                terms[mono] = terms.get(mono, 0) + c1 * c2
        return ChowClass(self.geometry, left.level, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "ChowClass":
        if exponent < 0:
            raise LevelMismatchError("negative powers of Chow classes are undefined")
        grades = self.gradings()
        if exponent and grades and grades[0] * exponent > self.geometry.level_dim(self.level):
            return ChowClass.zero(self.geometry, self.level)
        result = ChowClass.one(self.geometry, self.level)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
            if result.is_zero:
                break
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChowClass):
            return NotImplemented
        return self.geometry == other.geometry and self.level == other.level and self.terms == other.terms

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=_sort_key):
            coeff = MultiPoly(self.terms[mono])
            factors = [f"u({j})" if e == 1 else f"u({j})^{e}" for j, e in enumerate(mono.u, start=1) if e]
            if mono.h:
                factors.append("h" if mono.h == 1 else f"h^{mono.h}")
            factors.extend(f"s(0,{i})" for i in mono.s0)
            parts.append(f"({coeff})" + "".join(f"*{f}" for f in factors))
        return " + ".join(parts)

    def to_json(self) -> Dict[str, Any]:
        return {
            "level": self.level,
            "terms": [
                {
                    "u": list(mono.u),
                    "h": mono.h,
                    "s0": list(mono.s0),
                    "coeff": MultiPoly(self.terms[mono]).to_json(),
                }
                for mono in sorted(self.terms, key=_sort_key)
            ],
        }

    @classmethod
    def from_json(cls, geom: TowerGeometry, data: Dict[str, Any]) -> "ChowClass":
        level = int(data["level"])
        terms: Dict[ChowMonomial, Any] = {}
        for item in data["terms"]:
            mono = make_monomial(tuple(item["u"]), int(item["h"]), tuple(item["s0"]))
            coeff = MultiPoly.from_json(item["coeff"], geom.c).raw
            terms[mono] = terms.get(mono, 0) + coeff
        return cls(geom, level, terms)


def _sort_key(mono: ChowMonomial) -> Tuple[Any, ...]:
    return (-mono.grading, tuple(-e for e in reversed(mono.u)), -mono.h, mono.s0)
