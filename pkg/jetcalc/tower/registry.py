from __future__ import annotations

from typing import List, Optional

from .base import TowerGeometry


def get_geometry(N: int, c: int) -> TowerGeometry:
    return TowerGeometry(int(N), int(c))


def list_geometries(max_N: int, min_N: int = 2, min_c: int = 1, max_c: Optional[int] = None) -> List[TowerGeometry]:
    out: List[TowerGeometry] = []
    for N in range(min_N, max_N + 1):
        top = N - 1 if max_c is None else min(max_c, N - 1)
        for c in range(max(min_c, 1), top + 1):
            out.append(TowerGeometry(N, c))
    return out


def morse_grid() -> List[TowerGeometry]:
    return list_geometries(6) + list_geometries(7, min_N=7, min_c=2)


def positivity_grid(max_N: int = 8) -> List[TowerGeometry]:
    return [g for g in list_geometries(max_N) if g.c >= g.n]
