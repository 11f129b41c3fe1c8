"""Scaling benchmark: measurement time against suite size, per criterion."""
from __future__ import annotations

import gc
import statistics
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, List, Sequence as Seq, Tuple

from .criteria import CriterionId, annotate
from .engine import Measurement
from .minilang import LocatedProgram, parse_program
from .normalize import normalize_dnf
from .randgen import random_suite
from .trace import DEFAULT_STEP_LIMIT, TestSuite, run_plain

BASELINE = "no-cov"
DEFAULT_CRITERIA = ("CC", "GACC", "CACC", "RACC", "FCC", "ALL_DEFS")
DEFAULT_SIZES = (100, 300, 1000, 3000, 10000)


def bundled_programs() -> Dict[str, LocatedProgram]:
    """The benchmark programs shipped with the package, by file stem."""
    out = {}
    root = resources.files("htolcov") / "data"
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".mimp"):
            out[entry.name[:-5]] = parse_program(entry.read_text())
    return out


@dataclass(frozen=True)
class BenchPoint:
    program: str
    criterion: str
    size: int
    time: float      # median seconds
    baseline: float  # median seconds without measurement

    @property
    def overhead(self) -> float:
        return self.time / self.baseline if self.baseline > 0 else float("inf")


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    r2: float


def linear_fit(xs: Seq[float], ys: Seq[float]) -> LinearFit:
    slope, intercept = statistics.linear_regression(xs, ys)
    if len(set(ys)) < 2:
        return LinearFit(slope, intercept, 1.0)
    r = statistics.correlation(xs, ys)
    return LinearFit(slope, intercept, r * r)


@dataclass
class BenchResult:
    sizes: List[int]
    reps: int
    points: List[BenchPoint] = field(default_factory=list)

    def criteria(self) -> List[str]:
        return list(dict.fromkeys(pt.criterion for pt in self.points))

    def series(self, criterion: str) -> List[Tuple[int, float]]:
        """Mean time over programs at each size (the baseline for ``no-cov``)."""
        out = []
        for n in self.sizes:
            if criterion == BASELINE:
                ts = list({pt.program: pt.baseline for pt in self.points if pt.size == n}.values())
            else:
                ts = [pt.time for pt in self.points if pt.size == n and pt.criterion == criterion]
            out.append((n, statistics.fmean(ts)))
        return out

    def fit(self, criterion: str) -> LinearFit:
        xs, ys = zip(*self.series(criterion))
        return linear_fit(xs, ys)

    def median_overhead(self, criterion: str) -> float:
        return statistics.median(pt.overhead for pt in self.points if pt.criterion == criterion)

    def to_text(self) -> str:
        lines = [f"sizes: {', '.join(map(str, self.sizes))}; median of {self.reps} repetitions"]
        head = f"{'criterion':<10}" + "".join(f"{n:>10}" for n in self.sizes) + \
            f"{'slope(ms/test)':>16}{'R^2':>8}{'overhead':>10}"
        lines.append(head)
        for c in [BASELINE] + self.criteria():
            ser = self.series(c)
            fit = self.fit(c)
            ov = "" if c == BASELINE else f"{self.median_overhead(c):.2f}x"
            lines.append(f"{c:<10}" + "".join(f"{t:>10.3f}" for _, t in ser) +
                         f"{fit.slope * 1e3:>16.4f}{fit.r2:>8.4f}{ov:>10}")
        return "\n".join(lines) + "\n"


def _timed(fn, reps: int) -> float:
    times = []
    for _ in range(reps):
        gc.collect()
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def measure_once(p: LocatedProgram, criterion: CriterionId, suite: TestSuite,
                 step_limit: int = DEFAULT_STEP_LIMIT) -> None:
    """Full measurement: annotate, normalize, run every test, consolidate."""
    objectives = annotate(p, criterion).objectives
    dnfs = [normalize_dnf(o.h, o.id) for o in objectives]
    m = Measurement(p, dnfs, step_limit)
    m.run_suite(suite)
    m.verdicts()


def run_baseline(p: LocatedProgram, suite: TestSuite, step_limit: int = DEFAULT_STEP_LIMIT) -> None:
    for t in suite:
        run_plain(p, t, step_limit)


def bench(programs: Dict[str, LocatedProgram] = None, criteria: Seq[str] = DEFAULT_CRITERIA,
          sizes: Seq[int] = DEFAULT_SIZES, reps: int = 5, seed: int = 0,
          step_limit: int = DEFAULT_STEP_LIMIT, progress=None) -> BenchResult:
    sizes = list(sizes)
    if len(sizes) < 2 or any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("need at least two strictly increasing suite sizes")
    if reps < 1:
        raise ValueError("reps must be >= 1")
    programs = programs if programs is not None else bundled_programs()
    crits = [CriterionId.parse(c) for c in criteria]
    result = BenchResult(sizes, reps)
    for name, p in programs.items():
        full = random_suite(p, sizes[-1], seed)
        run_baseline(p, TestSuite(full.tests[:1]), step_limit)  # compile outside the timings
        for n in sizes:
            suite = TestSuite(full.tests[:n])
            base = _timed(lambda: run_baseline(p, suite, step_limit), reps)
            for c in crits:
                t = _timed(lambda: measure_once(p, c, suite, step_limit), reps)
                result.points.append(BenchPoint(name, str(c), n, t, base))
                if progress:
                    progress(result.points[-1])
    return result


def parse_sizes(text: str) -> List[int]:
    """``100:1000:100`` (inclusive range) or ``100,300,1000``."""
    if ":" in text:
        parts = [int(x) for x in text.split(":")]
        if len(parts) != 3 or parts[2] <= 0:
            raise ValueError(f"bad size range {text!r}")
        return list(range(parts[0], parts[1] + 1, parts[2]))
    return [int(x) for x in text.split(",") if x.strip()]
