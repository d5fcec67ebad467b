from .base import ChowClass, ChowMonomial, TowerGeometry, make_monomial
from .integrate import (
    DegreeReport,
    TowerMonomial,
    audit_intersection_lemma,
    base_integral,
    integrate,
    integrate_by_descent,
    intersection_degree_report,
    intersection_tuples,
    linear_power_integral,
)
from .registry import get_geometry, list_geometries, morse_grid, positivity_grid
from .segre import (
    base_chern,
    base_segre,
    expand_tower_segre,
    m_coeff,
    segre_twist,
    tower_segre_terms,
)

__all__ = [
    "ChowClass",
    "ChowMonomial",
    "DegreeReport",
    "TowerGeometry",
    "TowerMonomial",
    "audit_intersection_lemma",
    "base_chern",
    "base_integral",
    "base_segre",
    "expand_tower_segre",
    "get_geometry",
    "integrate",
    "integrate_by_descent",
    "intersection_degree_report",
    "intersection_tuples",
    "linear_power_integral",
    "list_geometries",
    "m_coeff",
    "make_monomial",
    "morse_grid",
    "positivity_grid",
    "segre_twist",
    "tower_segre_terms",
]
