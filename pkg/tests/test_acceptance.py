"""Acceptance suite: one PASS/FAIL line per criterion.

Run under pytest (the lines are repeated in the terminal summary) or
directly with ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from htolcov.bench import DEFAULT_CRITERIA, DEFAULT_SIZES, bench  # noqa: E402
from htolcov.criteria import annotate  # noqa: E402
from htolcov.engine import OracleRefused  # noqa: E402
from htolcov.minilang import parse_program  # noqa: E402
from htolcov.normalize import normalize_dnf, to_hyperlabel  # noqa: E402

import golden  # noqa: E402
from properties import (covered_ids, engine_covers, monotonicity_violations,  # noqa: E402
                        random_program_and_suites, subsumption_violations)
from strategies import gen_case  # noqa: E402

# tolerances
ORACLE_CASES = 1000
ORACLE_SECONDS = 300
GOLDEN_SECONDS = 10
SUBSUMPTION_TRIALS = 200
MONOTONICITY_TRIALS = 500
SCALING_R2 = 0.95
OVERHEAD_ALL_DEFS = 4.0
OVERHEAD_OTHERS = 2.5
SCALING_SECONDS = 900

RESULTS: list = []


def record(n: int, name: str, ok: bool, detail: str) -> None:
    line = f"ACCEPTANCE {n} {name}: {'PASS' if ok else 'FAIL'} ({detail})"
    RESULTS.append(line)
    print(line, flush=True)
    assert ok, line


# ------------------------------------------------------------------ 1 and 2


_CORPUS: dict = {}


def corpus():
    """Seeded cases with their oracle verdicts; oracle refusals are skipped."""
    if not _CORPUS:
        t0 = time.perf_counter()
        out, refused, seed = [], 0, 0
        while len(out) < ORACLE_CASES:
            case = gen_case(random.Random(seed))
            seed += 1
            try:
                out.append((case, case.oracle()))
            except OracleRefused:
                refused += 1
        _CORPUS.update(cases=out, refused=refused, seconds=time.perf_counter() - t0)
    return _CORPUS


def test_1_oracle_equivalence():
    c = corpus()
    t0 = time.perf_counter()
    bad = [i for i, (case, want) in enumerate(c["cases"])
           if engine_covers(case.h, case.program, case.suite) != want]
    secs = c["seconds"] + time.perf_counter() - t0
    covered = sum(w for _, w in c["cases"])
    record(1, "oracle equivalence", not bad and secs < ORACLE_SECONDS,
           f"{len(c['cases']) - len(bad)}/{len(c['cases'])} agree, {covered} covered, "
           f"{c['refused']} refused by the oracle, {secs:.0f}s")


def test_2_dnf_equivalence():
    c = corpus()
    bad = 0
    for case, want in c["cases"]:
        try:
            bad += case.oracle(to_hyperlabel(normalize_dnf(case.h))) != want
        except OracleRefused:
            bad += 1
    n = len(c["cases"])
    record(2, "DNF equivalence", bad == 0, f"{n - bad}/{n} agree")


# ------------------------------------------------------------------ 3


def test_3_golden_suite():
    from htolcov.engine import oracle_covers
    t0 = time.perf_counter()
    wrong = []
    for case in golden.CASES:
        p, h, suite = case.load()
        got = (engine_covers(h, p, suite), oracle_covers(h, p, suite))
        if got != (case.expected, case.expected):
            wrong.append(case.name)
    secs = time.perf_counter() - t0
    n = len(golden.CASES)
    record(3, "golden examples", not wrong and secs < GOLDEN_SECONDS,
           f"{n - len(wrong)}/{n} match{'; wrong: ' + ', '.join(wrong) if wrong else ''}, {secs:.2f}s")


# ------------------------------------------------------------------ 4


def _decision(n: int):
    conds = " && ".join(f"x{i} < y{i}" for i in range(n))
    params = ", ".join(f"int x{i}, int y{i}" for i in range(n))
    return parse_program(f"int main({params}) {{ if ({conds}) {{ return 1; }} return 0; }}")


def test_4_count_laws():
    ex1 = parse_program((golden.DATA / "ex1.mimp").read_text())
    problems = []
    if len(annotate(ex1, "MCC")) != 4:
        problems.append("MCC on the two-condition example")
    for n in range(1, 7):
        p = _decision(n)
        want = {"MCC": 2 ** n, "CC": 2 * n, "RACC": n, "CACC": n}
        for crit, k in want.items():
            got = len(annotate(p, crit))
            if got != k:
                problems.append(f"{crit} n={n}: {got} != {k}")
    record(4, "count laws", not problems,
           "; ".join(problems) or "MCC 4 on the example; MCC 2^n, CC 2n, RACC n, CACC n for n=1..6")


# ------------------------------------------------------------------ 5 and 7


def test_5_subsumption():
    violations, premises = [], 0
    for seed in range(SUBSUMPTION_TRIALS):
        p, _, suite = random_program_and_suites(random.Random(10_000 + seed))
        violations += subsumption_violations(p, suite)
        premises += sum(v for k, v in covered_ids(p, suite, ["RACC", "CACC"]).items())
    record(5, "subsumption", not violations,
           f"{SUBSUMPTION_TRIALS} trials, {premises} covered RACC/CACC premises, "
           f"{len(violations)} violations")


def test_7_monotonicity():
    violations = []
    for seed in range(MONOTONICITY_TRIALS):
        p, small, big = random_program_and_suites(random.Random(20_000 + seed))
        violations += monotonicity_violations(p, small, big, DEFAULT_CRITERIA + ("MCC", "DC"))
    record(7, "monotonicity", not violations,
           f"{MONOTONICITY_TRIALS} trials, {len(violations)} violations")


# ------------------------------------------------------------------ 6


@pytest.mark.slow
def test_6_scaling():
    t0 = time.perf_counter()
    r = bench(sizes=DEFAULT_SIZES, reps=5)
    secs = time.perf_counter() - t0
    parts, ok = [], secs < SCALING_SECONDS
    for c in DEFAULT_CRITERIA:
        r2, ov = r.fit(c).r2, r.median_overhead(c)
        bound = OVERHEAD_ALL_DEFS if c == "ALL_DEFS" else OVERHEAD_OTHERS
        ok &= r2 >= SCALING_R2 and ov <= bound
        parts.append(f"{c} R2={r2:.4f} {ov:.2f}x")
    record(6, "scaling", ok, "; ".join(parts) + f"; {secs:.0f}s")


if __name__ == "__main__":
    tests = [test_1_oracle_equivalence, test_2_dnf_equivalence, test_3_golden_suite,
             test_4_count_laws, test_5_subsumption, test_6_scaling, test_7_monotonicity]
    failed = 0
    for t in tests:
        try:
            t()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
