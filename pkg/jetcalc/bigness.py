from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .errors import DomainError, LevelError, UndefinedDominantError
from .polyring import (
    MINUS_INFINITY,
    AsymOrder,
    MultiPoly,
    PositivityCertificate,
    asym_compare,
    degree,
    dominant,
    find_certificate,
)
from .tower import (
    ChowClass,
    TowerGeometry,
    TowerMonomial,
    base_integral,
    integrate,
    integrate_by_descent,
    linear_power_integral,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TwistVector:
    a: Tuple[int, ...]
    t: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))

    @property
    def level(self) -> int:
        return len(self.a)

    def partial_sums(self) -> Tuple[int, ...]:
        out: List[int] = []
        running = 0
        for x in self.a:
            running += x
            out.append(running)
        return tuple(out)

    def to_class(self, geom: TowerGeometry) -> ChowClass:
        cls = ChowClass.constant(geom, self.level, 0)
        for j, x in enumerate(self.a, start=1):
            if x:
                cls = cls + ChowClass.u(geom, self.level, j) * x
        if self.t:
            cls = cls + ChowClass.h(geom, self.level) * self.t
        return cls


@dataclass(frozen=True)
class EffectivityResult:
    effective: bool
    partial_sums: Tuple[int, ...]
    first_failure: Optional[int] = None

    def __bool__(self) -> bool:
        return self.effective


def effectivity_check(tv: TwistVector) -> EffectivityResult:
    sums = tv.partial_sums()
    for j, b in enumerate(sums, start=1):
        if b < 0:
            return EffectivityResult(False, sums, j)
    return EffectivityResult(True, sums)


def l_form(k: int) -> TwistVector:
    """Coefficients of l_k: 1 on u_k, 2*3^(j-1) on u_(k-j), 2*3^(k-1) on h."""
    if k < 1:
        raise LevelError(f"l({k}) is not defined, levels start at 1", f"l({k})")
    coeffs = [2 * 3 ** (k - j - 1) for j in range(1, k)] + [1]
    return TwistVector(tuple(coeffs), 2 * 3 ** (k - 1))


def l_class(geom: TowerGeometry, k: int, top: Optional[int] = None) -> ChowClass:
    top = geom.kappa if top is None else top
    if not 1 <= k <= top:
        raise LevelError(f"l({k}) is outside levels 1..{top}", f"l({k})")
    return l_form(k).to_class(geom)


def canonical_twist(geom: TowerGeometry, level: Optional[int] = None) -> TwistVector:
    """Twists of F = l_1 + ... + l_level, summed componentwise."""
    level = geom.kappa if level is None else level
    if level < 1:
        raise LevelError(f"level must be >= 1, got {level}", f"F({level})")
    return TwistVector(tuple(3 ** (level - j) for j in range(1, level + 1)), 3 ** level - 1)


def l_product(geom: TowerGeometry, level: int, exponents: Sequence[int]) -> ChowClass:
    """prod_j l_j^e_j as a class on X_level."""
    cls = ChowClass.one(geom, level)
    for j, e in enumerate(exponents, start=1):
        if e:
            cls = cls * (l_class(geom, j, top=level).pullback(level) ** e)
    return cls


def reference_integral(geom: TowerGeometry) -> MultiPoly:
    """The base integral of s_b * s_c^(kappa-1)."""
    indices = tuple(sorted((geom.b,) + (geom.c,) * (geom.kappa - 1)))
    return base_integral(geom, indices)


def proportionality(p: MultiPoly, q: MultiPoly) -> Optional[int]:
    """The integer K with p == K * q, if there is one."""
    if q.is_zero:
        return None
    mono, coeff = next(iter(q.terms.items()))
    num = p.terms.get(mono, 0)
    if num % coeff:
        return None
    ratio = num // coeff
    return ratio if p == q * ratio else None


@dataclass(frozen=True)
class MorseReport:
    geometry: TowerGeometry
    a: int
    m: int
    level: int
    lhs: MultiPoly
    rhs: MultiPoly
    difference: MultiPoly
    dominant_check: bool
    dominant_multiplier: Optional[int]
    dominant_order: AsymOrder
    degree_rhs: Any
    certificate: Optional[PositivityCertificate] = field(default=None, compare=False)

    @property
    def kappa(self) -> int:
        return self.geometry.kappa

    @property
    def b(self) -> int:
        return self.geometry.b

    @property
    def delta(self) -> Optional[int]:
        return self.certificate.bound if self.certificate else None

    @property
    def degree_ok(self) -> bool:
        return self.degree_rhs < self.geometry.N

    def to_json(self) -> Dict[str, Any]:
        return {
            "N": self.geometry.N,
            "c": self.geometry.c,
            "a": self.a,
            "m": self.m,
            "kappa": self.kappa,
            "b": self.b,
            "level": self.level,
            "lhs": self.lhs.to_text(),
            "rhs": self.rhs.to_text(),
            "difference": self.difference.to_text(),
            "lhs_terms": self.lhs.to_json(),
            "rhs_terms": self.rhs.to_json(),
            "difference_terms": self.difference.to_json(),
            "dominant_check": self.dominant_check,
            "dominant_multiplier": self.dominant_multiplier,
            "dominant_order": self.dominant_order.value,
            "degree_rhs": None if self.degree_rhs == MINUS_INFINITY else self.degree_rhs,
            "delta": self.delta,
        }


def morse_criterion(geom: TowerGeometry, a: int, delta_max: int, level: Optional[int] = None) -> MorseReport:
    if a < 0:
        raise DomainError(f"the base twist a must be nonnegative, got {a}")
    level = geom.kappa if level is None else level
    if level < geom.kappa:
        raise LevelError(f"the criterion runs on levels >= kappa={geom.kappa}, got {level}", f"X_{level}")
    tv = canonical_twist(geom, level)
    m = tv.t
    top = geom.level_dim(level)
    lhs = linear_power_integral(geom, level, tv.a, m, top)
    rhs = linear_power_integral(geom, level, tv.a, m, top - 1, 1) * (top * (m + a))
    difference = lhs - rhs

    ref = reference_integral(geom)
    multiplier: Optional[int] = None
    try:
        dom_lhs = dominant(lhs)
        multiplier = proportionality(dom_lhs, dominant(ref))
        positive = degree(lhs) == degree(ref) and dom_lhs.evaluate((1,) * geom.c) > 0
    except UndefinedDominantError:
        positive = False
    # lhs dominates the reference integral coefficientwise; equal when kappa = 1
    order = asym_compare(lhs, ref)
    if level == geom.kappa == 1:
        dominant_check = positive and order is AsymOrder.SIM
    else:
        dominant_check = positive and order in (AsymOrder.SIM, AsymOrder.GTRSIM)

    cert = find_certificate(difference, delta_max)
    logger.debug(
        "morse on %s level %d a=%d: lhs degree %s, rhs degree %s, delta %s",
        geom.label(), level, a, degree(lhs), degree(rhs), cert.bound if cert else None,
    )
    return MorseReport(
        geom, a, m, level, lhs, rhs, difference, dominant_check, multiplier, order, degree(rhs), cert
    )


def _integrate_with_factors(
    geom: TowerGeometry, level: int, cls: ChowClass, factors: Sequence[Tuple[int, int]]
) -> MultiPoly:
    terms: Dict[TowerMonomial, Any] = {}
    for mono, coeff in cls.terms.items():
        extra = tuple(factors) + tuple((0, i) for i in mono.s0)
        key = TowerMonomial(level, mono.u, mono.h, extra)
        terms[key] = terms.get(key, 0) + coeff
    return integrate_by_descent(geom, level, terms)


@dataclass
class AuditRecord:
    geometry: TowerGeometry
    lattice_checked: int = 0
    lattice_failures: List[str] = field(default_factory=list)
    estimate_checked: int = 0
    estimate_failures: List[str] = field(default_factory=list)
    descent: List[Dict[str, Any]] = field(default_factory=list)
    top_block: Dict[str, Any] = field(default_factory=dict)

    @property
    def lattice_ok(self) -> bool:
        return not self.lattice_failures

    @property
    def estimates_ok(self) -> bool:
        return not self.estimate_failures

    @property
    def descent_ok(self) -> bool:
        return all(d["ok"] for d in self.descent)

    @property
    def top_block_ok(self) -> bool:
        return bool(self.top_block.get("ok"))

    @property
    def ok(self) -> bool:
        return self.lattice_ok and self.estimates_ok and self.descent_ok and self.top_block_ok

    def to_json(self) -> Dict[str, Any]:
        return {
            "N": self.geometry.N,
            "c": self.geometry.c,
            "kappa": self.geometry.kappa,
            "b": self.geometry.b,
            "lattice": {"checked": self.lattice_checked, "failures": self.lattice_failures},
            "estimates": {"checked": self.estimate_checked, "failures": self.estimate_failures},
            "descent": self.descent,
            "top_block": self.top_block,
            "ok": self.ok,
        }


def _random_form(rng: random.Random, level: int) -> TwistVector:
    return TwistVector(tuple(rng.randint(-3, 3) for _ in range(level)), rng.randint(-3, 3))


def _violates_pattern(indices: Sequence[int], b: int, c: int) -> bool:
    first = indices[0]
    return first < b or (first == b and any(i < c for i in indices[1:]))


def _descent_entry(geom: TowerGeometry, k: int, upper: MultiPoly, lower: MultiPoly) -> Dict[str, Any]:
    diff = upper - lower
    try:
        equal = dominant(upper) == dominant(lower)
    except UndefinedDominantError:
        equal = upper.is_zero and lower.is_zero
    return {
        "level": k,
        "upper_degree": None if upper.is_zero else degree(upper),
        "lower_degree": None if lower.is_zero else degree(lower),
        "dominant_equal": equal,
        "ok": degree(diff) < geom.N,
    }


def technical_lemma_audit(geom: TowerGeometry, samples: int = 10, seed: int = 0) -> AuditRecord:
    rng = random.Random(seed)
    record = AuditRecord(geom)
    N, b, c, kappa = geom.N, geom.b, geom.c, geom.kappa
    c_hat = geom.hat(c)

    # products of n_k - 1 lattice classes with one h
    for k in range(1, kappa + 1):
        top = geom.level_dim(k)
        for _ in range(samples):
            tv = _random_form(rng, k)
            value = linear_power_integral(geom, k, tv.a, tv.t, top - 1, 1)
            record.lattice_checked += 1
            if degree(value) >= N:
                record.lattice_failures.append(f"level {k}: form {tv.a},{tv.t} gives degree {degree(value)}")

    # index tuples of length kappa - k breaking the (b, c, ..., c) pattern
    for k in range(1, kappa):
        q = kappa - k
        top = geom.level_dim(k)
        found = 0
        for _ in range(samples * 20):
            if found >= samples:
                break
            indices = tuple(sorted(rng.randint(0, c + 1) for _ in range(q)))
            if sum(indices) > top or not _violates_pattern(indices, b, c):
                continue
            found += 1
            p = top - sum(indices)
            gammas = ChowClass.one(geom, k)
            for _ in range(p):
                gammas = gammas * _random_form(rng, k).to_class(geom)
            for j in (k, k - 1):
                value = _integrate_with_factors(geom, k, gammas, [(j, i) for i in indices])
                record.estimate_checked += 1
                if degree(value) >= N:
                    record.estimate_failures.append(
                        f"level {k}: s({j},*) indices {indices} give degree {degree(value)}"
                    )

    # level descent of the leading block
    for k in range(1, kappa):
        upper = _integrate_with_factors(
            geom, k, l_product(geom, k, [c_hat] * k), [(k, b)] + [(k, c)] * (kappa - k - 1)
        )
        lower = _integrate_with_factors(
            geom, k - 1, l_product(geom, k - 1, [c_hat] * (k - 1)), [(k - 1, b)] + [(k - 1, c)] * (kappa - k)
        )
        record.descent.append(_descent_entry(geom, k, upper, lower))

    # l_kappa^(b hat) l_(kappa-1)^(c hat) ... l_1^(c hat) against s_(kappa-1, b) times the rest
    upper = integrate(geom, kappa, l_product(geom, kappa, [c_hat] * (kappa - 1) + [geom.hat(b)]))
    lower = _integrate_with_factors(
        geom, kappa - 1, l_product(geom, kappa - 1, [c_hat] * (kappa - 1)), [(kappa - 1, b)]
    )
    record.top_block = _descent_entry(geom, kappa, upper, lower)
    logger.debug("audit on %s: ok=%s", geom.label(), record.ok)
    return record
