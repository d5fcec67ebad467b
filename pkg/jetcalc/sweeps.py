from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence

from rich.progress import Progress

from .bigness import MorseReport, morse_criterion
from .errors import UsageError
from .polyring import degree
from .schur import formal_sequence, segre_sequence, verify_conjugate_identity
from .tower import TowerGeometry, audit_intersection_lemma, get_geometry, list_geometries
from .utils import err_console

logger = logging.getLogger(__name__)


@dataclass
class SweepResult:
    name: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> Dict[str, Any]:
        return {"sweep": self.name, "checked": self.checked, "failures": self.failures, "ok": self.ok}


def _run(
    name: str,
    items: Sequence[Any],
    check: Callable[[Any], List[str]],
    show_progress: bool,
    describe: Callable[[Any], str] = str,
) -> SweepResult:
    result = SweepResult(name)
    with Progress(console=err_console, transient=True, disable=not show_progress) as progress:
        task_id = progress.add_task(name, total=len(items))
        for item in items:
            failures = check(item)
            result.checked += 1
            result.failures.extend(failures)
            if failures:
                logger.warning("%s: %s failed", name, describe(item))
            progress.advance(task_id)
    logger.debug("%s: %d checked, %d failures", name, result.checked, len(result.failures))
    return result


def random_geometries(count: int, seed: int = 0, max_N: int = 8) -> List[TowerGeometry]:
    if count < 0:
        raise UsageError(f"need a nonnegative geometry count, got {count}")
    rng = random.Random(seed)
    out: List[TowerGeometry] = []
    for _ in range(count):
        N = rng.randint(2, max_N)
        out.append(get_geometry(N, rng.randint(1, N - 1)))
    return out


def schur_identity_sweep(
    weight: int, geometries: int = 10, seed: int = 0, show_progress: bool = False
) -> SweepResult:
    """Check the conjugate identity on the formal sequence and on Segre sequences of random geometries."""
    rng = random.Random(seed)
    cases: List[tuple] = [("formal", formal_sequence(weight))]
    for geom in random_geometries(geometries, seed):
        m = rng.randint(-2, 2)
        cases.append((f"{geom.label()} m={m}", segre_sequence(geom, m, upto=weight)))

    def check(case: tuple) -> List[str]:
        label, seq = case
        return [f"{label}: {lam}" for lam in verify_conjugate_identity(seq, weight)]

    return _run("schur identity", cases, check, show_progress, describe=lambda case: case[0])


def degree_lemma_sweep(max_N: int, show_progress: bool = False) -> SweepResult:
    geometries = list_geometries(max_N)

    def check(geom: TowerGeometry) -> List[str]:
        return [
            f"{geom.label()}: indices {list(r.indices)} h^{r.h_power}"
            for r in audit_intersection_lemma(geom)
            if not r.holds
        ]

    return _run("degree lemma", geometries, check, show_progress, describe=TowerGeometry.label)


def morse_sweep(
    geometries: Iterable[TowerGeometry],
    a_values: Sequence[int] = (0, 1),
    delta_max: int = 200,
    show_progress: bool = False,
) -> SweepResult:
    cases = [(geom, a) for geom in geometries for a in a_values]

    def check(case: tuple) -> List[str]:
        geom, a = case
        report = morse_criterion(geom, a, delta_max)
        return [f"{geom.label()} a={a}: {problem}" for problem in morse_problems(report)]

    return _run("morse criterion", cases, check, show_progress, describe=lambda case: case[0].label())


def morse_problems(report: MorseReport) -> List[str]:
    problems: List[str] = []
    if not report.degree_ok:
        problems.append(f"degree of rhs is {report.degree_rhs}")
    if degree(report.difference) != report.geometry.N:
        problems.append("difference does not have degree N")
    if not report.dominant_check:
        problems.append("dominant part does not dominate the reference integral")
    if report.delta is None:
        problems.append("no certified bound")
    return problems


def sample_points(bound: int, count: int, num_vars: int, seed: Optional[int] = None) -> List[tuple]:
    """Integer points with every coordinate in [bound, bound + 20]."""
    rng = random.Random(seed)
    return [tuple(rng.randint(bound, bound + 20) for _ in range(num_vars)) for _ in range(count)]
