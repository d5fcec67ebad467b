from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation
from sympy.combinatorics.partitions import IntegerPartition
from sympy.polys.domains import ZZ
from sympy.polys.orderings import lex
from sympy.polys.ring_series import rs_series_inversion
from sympy.polys.rings import PolyRing

from .errors import DomainError, PreconditionError, UndefinedDominantError
from .polyring import MultiPoly, PositivityCertificate, dominant, elementary_symmetric, find_certificate, poly_ring
from .tower import TowerGeometry, base_segre
from .utils import integer_partitions

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Partition:
    parts: Tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise DomainError(f"partition parts must be positive, got {parts}")
        if list(parts) != sorted(parts, reverse=True):
            raise DomainError(f"partition parts must be weakly decreasing, got {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def conjugate(lam: Partition) -> Partition:
    if not lam.parts:
        return lam
    return Partition(tuple(IntegerPartition(list(lam.parts)).conjugate))


def partitions_of(weight: int) -> List[Partition]:
    return [Partition(p) for p in integer_partitions(weight)]


class ClassSequence:
    """1, c_1, c_2, ... with reads outside the stored range returning 0."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Sequence[MultiPoly]) -> None:
        if not entries:
            raise DomainError("a class sequence needs at least the entry 1 at index 0")
        if entries[0] != 1:
            raise DomainError(f"entry 0 of a class sequence must be 1, got {entries[0]}")
        ring = entries[0].ring
        for e in entries:
            if e.ring != ring:
                raise DomainError("all entries of a class sequence must share one ring")
        self._entries = tuple(entries)

    @property
    def ring(self) -> PolyRing:
        return self._entries[0].ring

    @property
    def max_index(self) -> int:
        return len(self._entries) - 1

    def __len__(self) -> int:
        return len(self._entries)

    def __getitem__(self, i: int) -> MultiPoly:
        if 0 <= i < len(self._entries):
            return self._entries[i]
        return MultiPoly(self.ring.zero)

    def entries(self) -> List[MultiPoly]:
        return list(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassSequence):
            return NotImplemented
        return self._entries == other._entries

    def __repr__(self) -> str:
        return "ClassSequence([" + ", ".join(str(e) for e in self._entries) + "])"


def formal_sequence(weight: int) -> ClassSequence:
    ring = poly_ring(weight, "c") if weight else poly_ring(1, "c")
    gens = [MultiPoly(g) for g in ring.gens][:weight]
    return ClassSequence([MultiPoly(ring.one)] + gens)


def elementary_sequence(c: int, weight: int) -> ClassSequence:
    return ClassSequence([elementary_symmetric(c, ell) for ell in range(weight + 1)])


def segre_sequence(geom: TowerGeometry, m: int, upto: Optional[int] = None) -> ClassSequence:
    return ClassSequence(base_segre(geom, m, upto))


def schur_delta(lam: Partition, seq: ClassSequence) -> MultiPoly:
    """det(c_{lam_i + j - i}) expanded over permutations."""
    size = len(lam)
    ring = seq.ring
    if not size:
        return MultiPoly(ring.one)
    rows = [[seq[lam.parts[i] + j - i].raw for j in range(size)] for i in range(size)]
    total = ring.zero
    for perm in itertools.permutations(range(size)):
        term = ring(Permutation(list(perm)).signature())
        for i, j in enumerate(perm):
            entry = rows[i][j]
            if not entry:
                term = ring.zero
                break
            term = term * entry
        if term:
            total += term
    return MultiPoly(total)


@lru_cache(maxsize=None)
def _series_ring(symbols: Tuple[str, ...]) -> PolyRing:
    return PolyRing(",".join(symbols + ("t",)), ZZ, lex)


def series_inverse(seq: ClassSequence, max_index: int) -> ClassSequence:
    """s with (1 + c_1 t + c_2 t^2 + ...)(1 - s_1 t + s_2 t^2 - ...) = 1 up to t^max_index."""
    if max_index < 0:
        raise DomainError(f"need max_index >= 0, got {max_index}")
    base = seq.ring
    if max_index == 0:
        return ClassSequence([MultiPoly(base.one)])
    R = _series_ring(tuple(str(s) for s in base.symbols))
    t = R.gens[-1]
    total = R.zero
    for i in range(min(max_index, seq.max_index) + 1):
        for monom, coeff in seq[i].raw.items():
            total += R({monom + (i,): coeff})
    inverse = rs_series_inversion(total, t, max_index + 1)
    buckets: List[Dict] = [dict() for _ in range(max_index + 1)]
    for monom, coeff in inverse.items():
        i = monom[-1]
        # the s side carries alternating signs
        buckets[i][monom[:-1]] = coeff if i % 2 == 0 else -coeff
    return ClassSequence([MultiPoly(base.from_dict(b)) for b in buckets])


@dataclass(frozen=True)
class PartitionCheck:
    lam: Partition
    conjugate: Partition
    value: MultiPoly
    dominant_ok: bool
    certificate: Optional[PositivityCertificate] = field(default=None, compare=False)

    @property
    def bound(self) -> Optional[int]:
        return self.certificate.bound if self.certificate else None

    def to_json(self) -> Dict[str, Any]:
        return {
            "lambda": list(self.lam.parts),
            "conjugate": list(self.conjugate.parts),
            "dominant_ok": self.dominant_ok,
            "bound": self.bound,
        }


@dataclass(frozen=True)
class PositivityReport:
    geometry: TowerGeometry
    a: int
    partitions: Tuple[PartitionCheck, ...]

    @property
    def D(self) -> Optional[int]:
        bounds = [p.bound for p in self.partitions]
        if not bounds or any(b is None for b in bounds):
            return None
        return max(bounds)

    @property
    def unresolved(self) -> List[Partition]:
        return [p.lam for p in self.partitions if p.bound is None]

    @property
    def dominant_ok(self) -> bool:
        return all(p.dominant_ok for p in self.partitions)

    def to_json(self) -> Dict[str, Any]:
        return {
            "geometry": {"N": self.geometry.N, "c": self.geometry.c},
            "a": self.a,
            "partitions": [p.to_json() for p in self.partitions],
            "D": self.D,
        }


def numerical_positivity_report(geom: TowerGeometry, a: int, D_max: int) -> PositivityReport:
    if geom.c < geom.n:
        raise PreconditionError(f"numerical positivity needs c >= n, got c={geom.c}, n={geom.n}")
    segre = segre_sequence(geom, -a)
    dominant_seq = elementary_sequence(geom.c, geom.n)
    checks: List[PartitionCheck] = []
    for weight in range(1, geom.n + 1):
        for lam in partitions_of(weight):
            lam_bar = conjugate(lam)
            value = schur_delta(lam_bar, segre)
            expected = schur_delta(lam_bar, dominant_seq)
            try:
                dominant_ok = dominant(value) == expected
            except UndefinedDominantError:
                dominant_ok = False
            cert = find_certificate(value, D_max)
            if cert is None:
                logger.info("no bound for %s within %d on %s", lam, D_max, geom.label())
            checks.append(PartitionCheck(lam, lam_bar, value, dominant_ok, cert))
    return PositivityReport(geom, a, tuple(checks))


def verify_conjugate_identity(seq: ClassSequence, max_weight: int) -> List[Partition]:
    """Partitions where Delta_lam(c) and Delta_conj(series_inverse(c)) disagree."""
    inverse = series_inverse(seq, max_weight)
    failures: List[Partition] = []
    for weight in range(1, max_weight + 1):
        for lam in partitions_of(weight):
            if schur_delta(lam, seq) != schur_delta(conjugate(lam), inverse):
                failures.append(lam)
    if failures:
        logger.warning("conjugate identity failed for %s", ", ".join(str(p) for p in failures))
    return failures


def fulton_lazarsfeld_check(c: int, max_weight: int, points: Iterable[Sequence[int]]) -> List[Tuple[Partition, Tuple[int, ...]]]:
    """Strict positivity of Delta_lam(e(d)) for partitions with parts at most the rank c."""
    seq = elementary_sequence(c, max_weight)
    pts = [tuple(p) for p in points]
    for p in pts:
        if len(p) != c or any(x <= 0 for x in p):
            raise DomainError(f"points must be strictly positive with {c} coordinates, got {p}")
    failures: List[Tuple[Partition, Tuple[int, ...]]] = []
    for weight in range(1, max_weight + 1):
        for lam in partitions_of(weight):
            if lam.parts[0] > c:
                continue
            value = schur_delta(lam, seq)
            failures.extend((lam, p) for p in pts if value.evaluate(p) <= 0)
    return failures
