"""Integration over the levels of the jet tower.

Classes on X_k are pushed down one level at a time: a monomial whose top
exponent is p becomes s_{k-1, p-(n-1)} on X_{k-1}, and at the base a product
h^a * s_{0,i_1} * ... * s_{0,i_t} integrates to prod(s~_i) * d1*...*dc exactly
when a + sum(i) = n.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from sympy.ntheory.multinomial import multinomial_coefficients
from sympy.polys.rings import PolyElement

from ..errors import DimensionMismatchError, DomainError, LevelMismatchError
from ..polyring import MultiPoly, degree
from ..utils import integer_partitions
from .base import ChowClass, ChowMonomial, TowerGeometry, make_monomial
from .segre import base_segre, expand_tower_segre, m_coeff, tower_segre_terms

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _base_integral(geom: TowerGeometry, h: int, s0: Tuple[int, ...]) -> PolyElement:
    ring = geom.ring
    if h + sum(s0) != geom.n:
        return ring.zero
    segre = base_segre(geom, 0)
    value = geom.fundamental_degree().raw
    for i in s0:
        value = value * segre[i].raw
    return value


def base_integral(geom: TowerGeometry, indices: Sequence[int], h_power: int = 0) -> MultiPoly:
    """The integral over X of s_i_1 * ... * s_i_t * h^h_power."""
    return MultiPoly(_base_integral(geom, h_power, tuple(sorted(i for i in indices if i))))


@lru_cache(maxsize=None)
def _integrate_monomial(geom: TowerGeometry, mono: ChowMonomial) -> PolyElement:
    if not mono.u:
        return _base_integral(geom, mono.h, mono.s0)
    level = len(mono.u)
    r = mono.u[-1] - (geom.n - 1)
    if r < 0:
        return geom.ring.zero
    rest = ChowMonomial(mono.u[:-1], mono.h, mono.s0)
    total = geom.ring.zero
    for seg, coeff in tower_segre_terms(geom, level - 1, r).items():
        value = _integrate_monomial(geom, rest * seg)
        if value:
            total += coeff * value
    return total


def integrate(geom: TowerGeometry, k: int, cls: ChowClass) -> MultiPoly:
    if cls.level != k:
        raise LevelMismatchError(f"class lives on level {cls.level}, asked to integrate over level {k}")
    if cls.geometry != geom:
        raise LevelMismatchError(f"class belongs to {cls.geometry.label()}, not {geom.label()}")
    top = geom.level_dim(k)
    total = geom.ring.zero
    pushed = 0
    for mono, coeff in cls.terms.items():
        if mono.grading != top:
            continue
        value = _integrate_monomial(geom, mono)
        pushed += 1
        if value:
            total += coeff * value
    logger.debug("integrated %d of %d terms over X_%d for %s", pushed, len(cls.terms), k, geom.label())
    return MultiPoly(total)


SegreFactor = Tuple[int, int]


@dataclass(frozen=True)
class TowerMonomial:
    """u_1^p_1 ... u_k^p_k h^a times tower Segre factors s_{j,i} kept symbolic."""

    level: int
    u: Tuple[int, ...]
    h: int = 0
    segre: Tuple[SegreFactor, ...] = ()

    def __post_init__(self) -> None:
        if len(self.u) != self.level:
            raise LevelMismatchError(f"expected {self.level} u-exponents, got {len(self.u)}")
        if any(e < 0 for e in self.u) or self.h < 0:
            raise DomainError("exponents must be nonnegative")
        for j, i in self.segre:
            if not 0 <= j <= self.level:
                raise LevelMismatchError(f"s({j},{i}) does not live on level {self.level}")
            if i < 0:
                raise DomainError(f"negative Segre index in s({j},{i})")
        object.__setattr__(self, "u", tuple(self.u))
        object.__setattr__(self, "segre", tuple(sorted((j, i) for j, i in self.segre if i)))

    @property
    def grading(self) -> int:
        return sum(self.u) + self.h + sum(i for _, i in self.segre)

    def to_class(self, geom: TowerGeometry) -> ChowClass:
        cls = ChowClass(geom, self.level, {make_monomial(self.u, self.h): 1})
        for j, i in self.segre:
            cls = cls * expand_tower_segre(geom, j, i).pullback(self.level)
        return cls


@lru_cache(maxsize=None)
def _descend(geom: TowerGeometry, mono: TowerMonomial) -> PolyElement:
    k = mono.level
    if k == 0:
        return _base_integral(geom, mono.h, tuple(sorted(i for _, i in mono.segre)))
    lower = tuple(f for f in mono.segre if f[0] < k)
    # one step of the recursion for every factor living on X_k
    steps: Dict[Tuple[int, Tuple[int, ...]], int] = {(0, ()): 1}
    for j0, i in mono.segre:
        if j0 != k:
            continue
        grown: Dict[Tuple[int, Tuple[int, ...]], int] = {}
        for (p, idx), coeff in steps.items():
            for j in range(i + 1):
                mc = m_coeff(geom.n, i, j)
                if not mc:
                    continue
                key = (p + i - j, tuple(sorted(idx + ((j,) if j else ()))))
                grown[key] = grown.get(key, 0) + coeff * mc
        steps = grown
    total = geom.ring.zero
    for (p, idx), coeff in steps.items():
        if not coeff:
            continue
        r = mono.u[-1] + p - (geom.n - 1)
        if r < 0:
            continue
        factors = lower + tuple((k - 1, j) for j in idx) + ((k - 1, r),)
        child = TowerMonomial(k - 1, mono.u[:-1], mono.h, factors)
        value = _descend(geom, child)
        if value:
            total += coeff * value
    return total


Weighted = Union[TowerMonomial, Mapping[TowerMonomial, Any], Iterable[Tuple[TowerMonomial, Any]]]


def integrate_by_descent(geom: TowerGeometry, k: int, terms: Weighted) -> MultiPoly:
    """Integrate tower monomials level by level without expanding factors ahead of time."""
    if isinstance(terms, TowerMonomial):
        items: Iterable[Tuple[TowerMonomial, Any]] = [(terms, 1)]
    elif isinstance(terms, Mapping):
        items = terms.items()
    else:
        items = terms
    total = geom.ring.zero
    for mono, coeff in items:
        if mono.level != k:
            raise LevelMismatchError(f"monomial lives on level {mono.level}, asked to integrate over level {k}")
        if isinstance(coeff, MultiPoly):
            coeff = coeff.raw
        value = _descend(geom, mono)
        if value:
            total += coeff * value
    return MultiPoly(total)


def linear_power_integral(
    geom: TowerGeometry,
    k: int,
    form: Sequence[int],
    t: int,
    e: int,
    h_power: int = 0,
) -> MultiPoly:
    """Integral over X_k of (a_1 u_1 + ... + a_k u_k + t h)^e * h^h_power."""
    if len(form) != k:
        raise LevelMismatchError(f"expected {k} u-coefficients, got {len(form)}")
    if e < 0 or h_power < 0:
        raise DomainError("exponents must be nonnegative")
    return MultiPoly(_linear_power_integral(geom, k, tuple(form), t, e, h_power))


@lru_cache(maxsize=None)
def _linear_power_integral(
    geom: TowerGeometry, k: int, form: Tuple[int, ...], t: int, e: int, h_power: int
) -> PolyElement:
    total = geom.ring.zero
    if e + h_power != geom.level_dim(k):
        return total
    scalars = form + (t,)
    expansion = multinomial_coefficients(k + 1, e) if e else {(0,) * (k + 1): 1}
    for exps, mult in expansion.items():
        weight = int(mult)
        for a, p in zip(scalars, exps):
            weight *= a ** p
        if not weight:
            continue
        value = _integrate_monomial(geom, ChowMonomial(tuple(exps[:k]), exps[k] + h_power, ()))
        if value:
            total += weight * value
    logger.debug("power %d of %s on X_%d: %d multinomial terms", e, scalars, k, len(expansion))
    return total


@dataclass(frozen=True)
class DegreeReport:
    indices: Tuple[int, ...]
    h_power: int
    value: MultiPoly
    degree: Union[int, float]
    meets_N: bool
    positive_h_ok: bool
    top_degree_ok: bool
    kappa_pattern_ok: bool

    @property
    def holds(self) -> bool:
        return self.positive_h_ok and self.top_degree_ok and self.kappa_pattern_ok

    def to_json(self) -> Dict[str, Any]:
        return {
            "indices": list(self.indices),
            "h_power": self.h_power,
            "degree": None if self.value.is_zero else self.degree,
            "meets_N": self.meets_N,
            "positive_h_ok": self.positive_h_ok,
            "top_degree_ok": self.top_degree_ok,
            "kappa_pattern_ok": self.kappa_pattern_ok,
        }


def intersection_degree_report(geom: TowerGeometry, indices: Sequence[int], h_power: int) -> DegreeReport:
    indices = tuple(indices)
    if any(i < 0 for i in indices) or h_power < 0:
        raise DimensionMismatchError("indices and the h power must be nonnegative")
    if list(indices) != sorted(indices):
        raise DimensionMismatchError(f"indices must be sorted ascending, got {indices}")
    if sum(indices) + h_power != geom.n:
        raise DimensionMismatchError(
            f"indices {indices} with h^{h_power} do not add up to n={geom.n}"
        )
    value = base_integral(geom, indices, h_power)
    deg = degree(value)
    N, c, b = geom.N, geom.c, geom.b
    meets = deg == N
    positive_h_ok = h_power == 0 or deg < N
    top = max(indices, default=0)
    top_degree_ok = h_power > 0 or (meets == (top <= c))
    kappa_pattern_ok = True
    if h_power == 0 and len(indices) == geom.kappa and indices:
        first = indices[0]
        if first < b or (first == b and any(i < c for i in indices[1:])):
            kappa_pattern_ok = deg < N
    return DegreeReport(indices, h_power, value, deg, meets, positive_h_ok, top_degree_ok, kappa_pattern_ok)


def intersection_tuples(geom: TowerGeometry) -> List[Tuple[Tuple[int, ...], int]]:
    """Every ascending index tuple with its h power, plus zero-padded kappa-tuples."""
    out: List[Tuple[Tuple[int, ...], int]] = []
    for h_power in range(geom.n + 1):
        for parts in integer_partitions(geom.n - h_power):
            indices = tuple(reversed(parts))
            out.append((indices, h_power))
            if h_power == 0 and len(indices) < geom.kappa:
                out.append(((0,) * (geom.kappa - len(indices)) + indices, 0))
    return out


def audit_intersection_lemma(geom: TowerGeometry) -> List[DegreeReport]:
    reports = [intersection_degree_report(geom, idx, a) for idx, a in intersection_tuples(geom)]
    failed = sum(1 for r in reports if not r.holds)
    logger.debug("degree lemma on %s: %d tuples, %d failures", geom.label(), len(reports), failed)
    return reports
