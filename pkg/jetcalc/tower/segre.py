"""Segre classes of the base and of the tower bundles."""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Union

from sympy.polys.domains import ZZ
from sympy.polys.orderings import lex
from sympy.polys.ring_series import rs_mul, rs_pow, rs_series_inversion, rs_trunc
from sympy.polys.rings import PolyElement, PolyRing

from ..errors import DomainError
from ..polyring import MultiPoly
from ..utils import binomial
from .base import ChowClass, ChowMonomial, TowerGeometry, make_monomial

logger = logging.getLogger(__name__)

Twist = Union[int, MultiPoly]


@lru_cache(maxsize=None)
def m_coeff(n: int, l: int, j: int) -> int:
    if n < 2:
        raise DomainError(f"the recursion coefficients need n >= 2, got n={n}")
    if j < 0 or j > l:
        raise DomainError(f"need 0 <= j <= l, got l={l}, j={j}")
    return sum((-1) ** i * binomial(n - 2 + i + j, i) for i in range(l - j + 1))


@lru_cache(maxsize=None)
def _series_ring(c: int) -> PolyRing:
    names = ",".join([f"d{i}" for i in range(1, c + 1)] + ["h"])
    return PolyRing(names, ZZ, lex)


def _split_by_h(series: PolyElement, geom: TowerGeometry, count: int) -> List[MultiPoly]:
    ring = geom.ring
    buckets: List[Dict] = [dict() for _ in range(count)]
    for monom, coeff in series.items():
        a = monom[-1]
        if a < count:
            buckets[a][monom[:-1]] = coeff
    return [MultiPoly(ring.from_dict(b)) if b else MultiPoly(ring.zero) for b in buckets]


def _line_factors(geom: TowerGeometry, m: int, prec: int) -> PolyElement:
    R = _series_ring(geom.c)
    h = R.gens[-1]
    numerator = 1 - m * h
    for d in R.gens[:-1]:
        numerator = rs_mul(numerator, 1 + (d - m) * h, h, prec)
    return numerator


def base_segre(geom: TowerGeometry, m: int, upto: Optional[int] = None) -> List[MultiPoly]:
    """Coefficients of h^0..h^upto in s(Omega_X(m)), upto defaulting to n."""
    top = geom.n if upto is None else upto
    if top < 0:
        raise DomainError(f"need a nonnegative truncation, got {top}")
    return list(_base_segre(geom, m, top))


@lru_cache(maxsize=None)
def _base_segre(geom: TowerGeometry, m: int, top: int) -> tuple:
    R = _series_ring(geom.c)
    h = R.gens[-1]
    prec = top + 1
    euler = rs_pow(1 + (1 - m) * h, -(geom.N + 1), h, prec)
    series = rs_mul(euler, _line_factors(geom, m, prec), h, prec)
    logger.debug("segre series of Omega_X(%d) for %s: %d terms", m, geom.label(), len(series))
    return tuple(_split_by_h(series, geom, prec))


def base_chern(geom: TowerGeometry, m: int, upto: Optional[int] = None) -> List[MultiPoly]:
    """Coefficients of c(TX(-m)) from the Euler and normal sequences."""
    top = geom.n if upto is None else upto
    R = _series_ring(geom.c)
    h = R.gens[-1]
    prec = top + 1
    ambient = rs_pow(1 + (1 - m) * h, geom.N + 1, h, prec)
    series = rs_mul(ambient, rs_series_inversion(_line_factors(geom, m, prec), h, prec), h, prec)
    return _split_by_h(rs_trunc(series, h, prec), geom, prec)


def segre_twist(segre: Sequence[MultiPoly], r: int, twist: Twist) -> List[MultiPoly]:
    """s_i(E (x) L) for c_1(L) = twist * h, with E of rank r."""
    if r < 1:
        raise DomainError(f"rank must be >= 1, got {r}")
    out: List[MultiPoly] = []
    for i in range(len(segre)):
        total = segre[i] * 1
        for j in range(i):
            total = total + segre[j] * (binomial(r - 1 + i, i - j) * twist ** (i - j))
        out.append(total)
    return out


def tower_segre_terms(geom: TowerGeometry, k: int, i: int) -> Dict[ChowMonomial, int]:
    """s_{k,i} as integer combinations of u_1..u_k monomials and base factors."""
    if k < 0 or i < 0:
        raise DomainError(f"need k >= 0 and i >= 0, got k={k}, i={i}")
    return _tower_segre_terms(geom, k, i)


@lru_cache(maxsize=None)
def _tower_segre_terms(geom: TowerGeometry, k: int, i: int) -> Dict[ChowMonomial, int]:
    if i == 0:
        return {make_monomial((0,) * k): 1}
    if k == 0:
        return {make_monomial((), 0, (i,)): 1}
    n = geom.n
    terms: Dict[ChowMonomial, int] = {}
    for j in range(i + 1):
        coeff = m_coeff(n, i, j)
        if not coeff:
            continue
        for mono, inner in _tower_segre_terms(geom, k - 1, j).items():
            lifted = ChowMonomial(mono.u + (i - j,), mono.h, mono.s0)
            terms[lifted] = terms.get(lifted, 0) + coeff * inner
    terms = {mono: v for mono, v in terms.items() if v}
    logger.debug("s_{%d,%d} on %s expands to %d terms", k, i, geom.label(), len(terms))
    return terms


def expand_tower_segre(geom: TowerGeometry, k: int, i: int) -> ChowClass:
    return ChowClass(geom, k, dict(tower_segre_terms(geom, k, i)))
