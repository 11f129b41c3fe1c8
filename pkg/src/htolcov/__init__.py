"""Coverage measurement for MiniImp programs with hyperlabel test objectives."""
from .criteria import CriterionId, annotate
from .engine import CoverageReport, coverage_score
from .htol import parse_htl, parse_hyperlabel, print_htl
from .minilang import parse_program
from .normalize import normalize_dnf
from .pipeline import MeasureConfig, measure, measure_objectives
from .trace import execute, parse_suite

__version__ = "0.1.0"

__all__ = [
    "CoverageReport", "CriterionId", "MeasureConfig", "annotate", "coverage_score", "execute",
    "measure", "measure_objectives", "normalize_dnf", "parse_htl", "parse_hyperlabel",
    "parse_program", "parse_suite", "print_htl",
]
