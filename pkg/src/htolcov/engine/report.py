"""Coverage score and the text/CSV reports."""
from __future__ import annotations

import csv
import io
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence as Seq

from ..trace import Outcome
from .consolidate import COVERED, UNKNOWN_BUDGET, CoverageVerdict

CSV_VERSION = "htolcov-report-v1"
CSV_COLUMNS = ("id", "criterion", "verdict", "witness_tests")


def coverage_score(verdicts: Seq[CoverageVerdict]) -> Fraction:
    """Covered / total; ``unknown-budget`` counts as uncovered."""
    if not verdicts:
        warnings.warn("no test objectives: coverage score defined as 1", stacklevel=2)
        return Fraction(1)
    return Fraction(sum(v.status == COVERED for v in verdicts), len(verdicts))


@dataclass
class CoverageReport:
    verdicts: List[CoverageVerdict]
    criteria: Mapping[str, str] = field(default_factory=dict)  # id -> criterion
    outcomes: Mapping[str, Outcome] = field(default_factory=dict)

    @property
    def score(self) -> Fraction:
        return coverage_score(self.verdicts)

    @property
    def covered(self) -> int:
        return sum(v.status == COVERED for v in self.verdicts)

    @property
    def unknown(self) -> List[str]:
        return [v.id for v in self.verdicts if v.status == UNKNOWN_BUDGET]

    @property
    def failing_tests(self) -> Dict[str, Outcome]:
        return {t: o for t, o in self.outcomes.items() if o.kind != "returned"}

    def passes(self, threshold: float) -> bool:
        return self.score >= Fraction(str(threshold)) and not self.unknown

    def rows(self) -> List[tuple]:
        out = []
        for v in self.verdicts:
            tests = " ".join(v.witness.tests) if v.witness else ""
            out.append((v.id, self.criteria.get(v.id, ""), v.status, tests))
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# {CSV_VERSION}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        w.writerows(self.rows())
        return buf.getvalue()

    def to_text(self) -> str:
        lines = []
        by_crit: Dict[str, List[CoverageVerdict]] = {}
        for v in self.verdicts:
            by_crit.setdefault(self.criteria.get(v.id, "") or "-", []).append(v)
        width = max((len(v.id) for v in self.verdicts), default=2)
        for crit, vs in by_crit.items():
            got = sum(v.status == COVERED for v in vs)
            lines.append(f"[{crit}] {got}/{len(vs)} covered")
            for v in vs:
                extra = f"  by {', '.join(v.witness.tests)}" if v.witness else ""
                lines.append(f"  {v.id:<{width}}  {v.status}{extra}")
        s = self.score
        if self.verdicts:
            lines.append(f"score: {self.covered}/{len(self.verdicts)} = {float(s):.4f}")
        else:
            lines.append("score: 1 (no objectives)")
        if self.unknown:
            lines.append(f"warning: {len(self.unknown)} objective(s) exceeded the search budget")
        for t, o in self.failing_tests.items():
            lines.append(f"warning: test {t} ended with {o}")
        return "\n".join(lines) + "\n"


def parse_csv_report(text: str) -> List[Dict[str, str]]:
    lines = text.splitlines()
    if not lines or lines[0] != f"# {CSV_VERSION}":
        raise ValueError(f"not a {CSV_VERSION} report")
    return list(csv.DictReader(lines[1:]))
