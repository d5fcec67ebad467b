"""Exact polynomials in the degree variables d1..dc."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from sympy.polys.domains import ZZ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from .errors import DomainError, UndefinedDominantError

logger = logging.getLogger(__name__)

MINUS_INFINITY = float("-inf")

Exponents = Tuple[int, ...]


@lru_cache(maxsize=None)
def poly_ring(num_vars: int, prefix: str = "d") -> PolyRing:
    if num_vars < 1:
        raise DomainError(f"a polynomial ring needs at least one variable, got {num_vars}")
    names = ",".join(f"{prefix}{i}" for i in range(1, num_vars + 1))
    return PolyRing(names, ZZ, grlex)


class MultiPoly:
    __slots__ = ("_p",)

    def __init__(self, value: PolyElement) -> None:
        if not isinstance(value, PolyElement):
            raise TypeError(f"expected a sympy PolyElement, got {type(value).__name__}")
        self._p = value

    @classmethod
    def zero(cls, num_vars: int, prefix: str = "d") -> "MultiPoly":
        return cls(poly_ring(num_vars, prefix).zero)

    @classmethod
    def constant(cls, num_vars: int, value: int, prefix: str = "d") -> "MultiPoly":
        return cls(poly_ring(num_vars, prefix)(value))

    @classmethod
    def gen(cls, num_vars: int, index: int, prefix: str = "d") -> "MultiPoly":
        if not 1 <= index <= num_vars:
            raise DomainError(f"variable {prefix}{index} outside {prefix}1..{prefix}{num_vars}")
        return cls(poly_ring(num_vars, prefix).gens[index - 1])

    @classmethod
    def gens(cls, num_vars: int, prefix: str = "d") -> List["MultiPoly"]:
        return [cls(g) for g in poly_ring(num_vars, prefix).gens]

    @classmethod
    def from_terms(cls, num_vars: int, terms: Dict[Exponents, int], prefix: str = "d") -> "MultiPoly":
        for exps in terms:
            if len(exps) != num_vars or any(e < 0 for e in exps):
                raise DomainError(f"bad exponent vector {exps} for {num_vars} variables")
        ring = poly_ring(num_vars, prefix)
        return cls(ring.from_dict({tuple(e): int(c) for e, c in terms.items() if c}))

    @classmethod
    def from_json(cls, data: Sequence[Dict[str, Any]], num_vars: Optional[int] = None, prefix: str = "d") -> "MultiPoly":
        if num_vars is None:
            if not data:
                raise DomainError("cannot infer the number of variables of an empty polynomial")
            num_vars = len(data[0]["exponents"])
        terms: Dict[Exponents, int] = {}
        for item in data:
            exps = tuple(int(e) for e in item["exponents"])
            terms[exps] = terms.get(exps, 0) + int(item["coeff"])
        return cls.from_terms(num_vars, terms, prefix)

    @property
    def raw(self) -> PolyElement:
        return self._p

    @property
    def ring(self) -> PolyRing:
        return self._p.ring

    @property
    def num_vars(self) -> int:
        return self._p.ring.ngens

    @property
    def terms(self) -> Dict[Exponents, int]:
        return {m: int(c) for m, c in self._p.items()}

    @property
    def is_zero(self) -> bool:
        return not self._p

    def _coerce(self, other: Any) -> PolyElement:
        if isinstance(other, MultiPoly):
            if other._p.ring != self._p.ring:
                raise DomainError(f"ring mismatch: {self._p.ring} vs {other._p.ring}")
            return other._p
        if isinstance(other, PolyElement):
            return self._p.ring.ring_new(other)
        if isinstance(other, int):
            return self._p.ring(other)
        raise TypeError(f"cannot combine MultiPoly with {type(other).__name__}")

    def __add__(self, other: Any) -> "MultiPoly":
        return MultiPoly(self._p + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other: Any) -> "MultiPoly":
        return MultiPoly(self._p - self._coerce(other))

    def __rsub__(self, other: Any) -> "MultiPoly":
        return MultiPoly(self._coerce(other) - self._p)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(-self._p)

    def __mul__(self, other: Any) -> "MultiPoly":
        return MultiPoly(self._p * self._coerce(other))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "MultiPoly":
        if exponent < 0:
            raise DomainError("negative powers are not polynomials")
        return MultiPoly(self._p ** exponent)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self._p.ring == other._p.ring and self._p == other._p
        if isinstance(other, int):
            return self._p == self._p.ring(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._p.ring.symbols, frozenset(self._p.items())))

    def __call__(self, *point: int) -> int:
        return self.evaluate(point)

    def evaluate(self, point: Sequence[int]) -> int:
        if len(point) != self.num_vars:
            raise DomainError(f"expected {self.num_vars} coordinates, got {len(point)}")
        return int(self._p(*point))

    def shift(self, delta: int) -> "MultiPoly":
        ring = self._p.ring
        return MultiPoly(self._p.compose([(g, g + delta) for g in ring.gens]))

    def homogeneous_part(self, deg: int) -> "MultiPoly":
        ring = self._p.ring
        return MultiPoly(ring.from_dict({m: c for m, c in self._p.items() if sum(m) == deg}))

    def permute(self, perm: Sequence[int]) -> "MultiPoly":
        ring = self._p.ring
        return MultiPoly(ring.from_dict({tuple(m[i] for i in perm): c for m, c in self._p.items()}))

    def is_symmetric(self) -> bool:
        n = self.num_vars
        for i in range(n - 1):
            perm = list(range(n))
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
            if self.permute(perm) != self:
                return False
        return True

    def to_text(self) -> str:
        if not self._p:
            return "0"
        names = [str(s) for s in self._p.ring.symbols]
        out: List[str] = []
        for monom, coeff in self._p.terms(order=grlex):
            coeff = int(coeff)
            factors = [name if e == 1 else f"{name}^{e}" for name, e in zip(names, monom) if e]
            mag = abs(coeff)
            body = "*".join(factors) if mag == 1 and factors else "*".join([str(mag)] + factors)
            if not out:
                out.append(f"-{body}" if coeff < 0 else body)
            else:
                out.append(f"- {body}" if coeff < 0 else f"+ {body}")
        return " ".join(out)

    def to_json(self) -> List[Dict[str, Any]]:
        return [
            {"exponents": list(monom), "coeff": str(int(coeff))}
            for monom, coeff in self._p.terms(order=grlex)
        ]

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_text()!r})"


def degree(p: MultiPoly) -> Union[int, float]:
    if p.is_zero:
        return MINUS_INFINITY
    return max(sum(m) for m in p.raw.itermonoms())


def dominant(p: MultiPoly) -> MultiPoly:
    if p.is_zero:
        raise UndefinedDominantError("the zero polynomial has no dominant part")
    return p.homogeneous_part(int(degree(p)))


def _dominant_or_zero(p: MultiPoly) -> MultiPoly:
    return p if p.is_zero else dominant(p)


class AsymOrder(str, Enum):
    SIM = "sim"
    GTRSIM = "gtrsim-strict"
    INCOMPARABLE = "incomparable"


def asym_compare(p: MultiPoly, q: MultiPoly) -> AsymOrder:
    pd = _dominant_or_zero(p)
    qd = _dominant_or_zero(q)
    if pd == qd:
        return AsymOrder.SIM
    diff = pd - qd
    if all(c >= 0 for c in diff.terms.values()):
        return AsymOrder.GTRSIM
    return AsymOrder.INCOMPARABLE


def elementary_symmetric(num_vars: int, k: int, prefix: str = "d") -> MultiPoly:
    ring = poly_ring(num_vars, prefix)
    if k < 0 or k > num_vars:
        return MultiPoly(ring.zero)
    total = ring.zero
    for combo in itertools.combinations(ring.gens, k):
        term = ring.one
        for g in combo:
            term *= g
        total += term
    return MultiPoly(total)


class CertificateStatus(str, Enum):
    CERTIFIED = "certified"
    NOT_CERTIFIED = "not-certified"


@dataclass(frozen=True)
class PositivityCertificate:
    bound: int
    shifted_constant: int
    status: CertificateStatus
    min_coefficient: int
    shifted: Optional[MultiPoly] = field(default=None, repr=False, compare=False)

    @property
    def certified(self) -> bool:
        return self.status is CertificateStatus.CERTIFIED

    def to_json(self) -> Dict[str, Any]:
        return {
            "bound": self.bound,
            "shifted_constant": str(self.shifted_constant),
            "status": self.status.value,
        }


def certify_positive(p: MultiPoly, delta: int) -> PositivityCertificate:
    """Shift d_i = delta + x_i and check the coefficients.

    Certified means every shifted coefficient is >= 0 and the constant term
    is > 0, which forces p > 0 on every integer point with all d_i >= delta.
    The criterion is sufficient, not necessary: a polynomial positive on the
    orthant can still fail it, so the bound is never claimed to be minimal.
    """
    if delta < 0:
        raise DomainError(f"shift must be nonnegative, got {delta}")
    shifted = p.shift(delta)
    coeffs = shifted.terms
    constant = coeffs.get((0,) * p.num_vars, 0)
    lowest = min(coeffs.values()) if coeffs else 0
    ok = bool(coeffs) and lowest >= 0 and constant > 0
    status = CertificateStatus.CERTIFIED if ok else CertificateStatus.NOT_CERTIFIED
    return PositivityCertificate(delta, constant, status, lowest, shifted)


def find_certificate(p: MultiPoly, delta_max: int) -> Optional[PositivityCertificate]:
    if delta_max < 0:
        raise DomainError(f"search cap must be nonnegative, got {delta_max}")
    n = p.num_vars
    for delta in range(delta_max + 1):
        # the shifted constant is p(delta, ..., delta)
        if p.evaluate((delta,) * n) <= 0:
            continue
        cert = certify_positive(p, delta)
        if cert.certified:
            logger.debug("certified %s at delta=%d", p, delta)
            return cert
    logger.debug("no certificate for %s up to %d", p, delta_max)
    return None


def min_certified_bound(p: MultiPoly, delta_max: int) -> Optional[int]:
    cert = find_certificate(p, delta_max)
    return cert.bound if cert else None
