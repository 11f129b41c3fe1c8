"""End-to-end measurement: objectives + suite -> coverage report."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence as Seq

from .criteria import CriterionId, annotate
from .engine import DEFAULT_BUDGET, CoverageReport, Measurement, consolidate, harvest
from .errors import WellFormednessError
from .htol import Objective, check_well_formed, parse_htl
from .minilang import LocatedProgram, parse_program
from .normalize import DEFAULT_DISJUNCT_CAP, DNFHyperlabel, normalize_dnf
from .trace import DEFAULT_STEP_LIMIT, TestSuite, parse_suite


@dataclass
class MeasureConfig:
    program: Path
    suite: Optional[Path] = None
    criteria: List[CriterionId] = field(default_factory=list)
    htl: Optional[Path] = None
    entry: Optional[str] = None
    step_limit: int = DEFAULT_STEP_LIMIT
    budget: int = DEFAULT_BUDGET
    dnf_cap: int = DEFAULT_DISJUNCT_CAP
    report: Optional[Path] = None
    threshold: float = 1.0
    array_cells: bool = False
    workers: int = 1

    def __post_init__(self):
        if bool(self.criteria) == bool(self.htl):
            raise ValueError("exactly one of a criterion list and an HTL file is required")


def normalize_all(objectives: Seq[Objective], cap: int = DEFAULT_DISJUNCT_CAP) -> List[DNFHyperlabel]:
    out = []
    for o in objectives:
        bad = check_well_formed(o.h)
        if bad:
            raise WellFormednessError(o.id, bad)
        out.append(normalize_dnf(o.h, o.id, cap))
    return out


def measure_objectives(p: LocatedProgram, objectives: Seq[Objective], suite: TestSuite, *,
                       step_limit: int = DEFAULT_STEP_LIMIT, budget: int = DEFAULT_BUDGET,
                       dnf_cap: int = DEFAULT_DISJUNCT_CAP, workers: int = 1) -> CoverageReport:
    dnfs = normalize_all(objectives, dnf_cap)
    criteria = {o.id: o.criterion for o in objectives}
    if workers > 1:
        outcomes = {}
        log = harvest(p, dnfs, suite, step_limit, workers=workers, outcomes=outcomes)
        verdicts = [consolidate(d, log, budget) for d in dnfs]
    else:
        m = Measurement(p, dnfs, step_limit, budget)
        m.run_suite(suite)
        verdicts, outcomes = m.verdicts(), dict(m.outcomes)
    return CoverageReport(verdicts, criteria, outcomes)


def load_objectives(p: LocatedProgram, criteria: Seq[CriterionId] = (), htl_text: str = None,
                    array_cells: bool = False) -> List[Objective]:
    if htl_text is not None:
        return parse_htl(htl_text, p)
    return annotate(p, list(criteria), array_cells=array_cells).objectives


@dataclass
class MeasureResult:
    program: LocatedProgram
    objectives: List[Objective]
    report: CoverageReport


def measure(cfg: MeasureConfig, suite: TestSuite = None) -> MeasureResult:
    """Run the whole pipeline on files named by ``cfg``.

    ``suite`` overrides ``cfg.suite`` (used for generated suites).
    """
    p = parse_program(Path(cfg.program).read_text(), cfg.entry)
    if suite is None:
        if cfg.suite is None:
            raise ValueError("no test suite given")
        suite = parse_suite(Path(cfg.suite).read_text())
    htl_text = Path(cfg.htl).read_text() if cfg.htl else None
    objectives = load_objectives(p, cfg.criteria, htl_text, cfg.array_cells)
    report = measure_objectives(p, objectives, suite, step_limit=cfg.step_limit,
                                budget=cfg.budget, dnf_cap=cfg.dnf_cap, workers=cfg.workers)
    return MeasureResult(p, objectives, report)
