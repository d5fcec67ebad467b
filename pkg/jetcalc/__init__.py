"""Exact intersection numbers on jet towers of complete intersections."""

from .bigness import MorseReport, TwistVector, canonical_twist, l_class, morse_criterion, technical_lemma_audit
from .degeneracy import DegeneracyInput, DegeneracyReport, degeneracy_report
from .errors import JetcalcError
from .parser import evaluate, parse, print_expr
from .polyring import MultiPoly, asym_compare, certify_positive, degree, dominant, min_certified_bound
from .schur import Partition, conjugate, numerical_positivity_report, schur_delta, series_inverse
from .tower import ChowClass, TowerGeometry, base_segre, expand_tower_segre, get_geometry, integrate

__all__ = [
	"ChowClass",
	"DegeneracyInput",
	"DegeneracyReport",
	"JetcalcError",
	"MorseReport",
	"MultiPoly",
	"Partition",
	"TowerGeometry",
	"TwistVector",
	"asym_compare",
	"base_segre",
	"canonical_twist",
	"certify_positive",
	"conjugate",
	"degeneracy_report",
	"degree",
	"dominant",
	"evaluate",
	"expand_tower_segre",
	"get_geometry",
	"integrate",
	"l_class",
	"min_certified_bound",
	"morse_criterion",
	"numerical_positivity_report",
	"parse",
	"print_expr",
	"schur_delta",
	"series_inverse",
	"technical_lemma_audit",
]
