"""Metamorphic checks shared by the property tests and the acceptance script.

Each check returns a list of human-readable violations; empty means it held.
"""
from __future__ import annotations

import random
from dataclasses import replace
from typing import Dict, List, Sequence as Seq

from htolcov.criteria import annotate
from htolcov.engine import consolidate, harvest
from htolcov.errors import AnnotationError
from htolcov.expr import atomic_conditions
from htolcov.htol import Hyperlabel
from htolcov.minilang import LocatedProgram
from htolcov.normalize import DNFHyperlabel, GuardedConjunction, normalize_dnf
from htolcov.pipeline import measure_objectives
from htolcov.trace import TestSuite

from strategies import gen_program, gen_suite

STEP_LIMIT = 2000
LOGIC = ("CC", "GACC", "CACC", "RACC", "MCC", "DC")


def covered_ids(p: LocatedProgram, suite: TestSuite, criteria: Seq[str]) -> Dict[str, bool]:
    objs = []
    for c in criteria:
        try:
            objs += annotate(p, c).objectives
        except AnnotationError:  # MCC on a wide decision
            pass
    rep = measure_objectives(p, objs, suite, step_limit=STEP_LIMIT)
    return {v.id: v.covered for v in rep.verdicts}


def subsumption_violations(p: LocatedProgram, suite: TestSuite) -> List[str]:
    """RACC => CACC => GACC => CC per condition; full MCC => full CC per decision."""
    cov = covered_ids(p, suite, LOGIC)
    out = []

    def implies(a: str, b: str) -> None:
        if cov.get(a) and not cov.get(b):
            out.append(f"{a} covered but {b} not")

    for loc, d in p.decisions():
        n = len(atomic_conditions(d))
        for i in range(1, n + 1):
            implies(f"racc_{loc}_c{i}", f"cacc_{loc}_c{i}")
            for tf in "tf":
                implies(f"cacc_{loc}_c{i}", f"gacc_{loc}_c{i}{tf}")
                implies(f"gacc_{loc}_c{i}{tf}", f"cc_{loc}_c{i}{tf}")
        mcc = [k for k in cov if k.startswith(f"mcc_{loc}_")]
        if mcc and all(cov[k] for k in mcc):
            out += [f"MCC full at loc{loc} but {k} not covered" for k in cov
                    if k.startswith(f"cc_{loc}_") and not cov[k]]
    return out


def _split(rng: random.Random, suite: TestSuite):
    k = rng.randint(0, len(suite.tests))
    return TestSuite(suite.tests[:k]), suite


def monotonicity_violations(p: LocatedProgram, small: TestSuite, big: TestSuite,
                            criteria: Seq[str]) -> List[str]:
    """Adding tests never uncovers an objective nor lowers the score."""
    a, b = covered_ids(p, small, criteria), covered_ids(p, big, criteria)
    out = [f"{k} lost when tests were added" for k, v in a.items() if v and not b[k]]
    if sum(a.values()) > sum(b.values()):
        out.append(f"score fell from {sum(a.values())} to {sum(b.values())}")
    return out


def engine_covers(h, p: LocatedProgram, suite: TestSuite, **kw) -> bool:
    d = h if isinstance(h, DNFHyperlabel) else normalize_dnf(h, "h")
    return consolidate(d, harvest(p, [d], suite, STEP_LIMIT, **kw)).covered


def law_violations(h: Hyperlabel, p: LocatedProgram, suite: TestSuite) -> List[str]:
    """Disjunction is any-of its disjuncts; a guard only narrows its body;
    deduplicated logs give the same verdict as full ones."""
    out = []
    d = normalize_dnf(h, "h")
    whole = engine_covers(d, p, suite)
    parts = [engine_covers(replace(d, disjuncts=(g,)), p, suite) for g in d.disjuncts]
    if whole != any(parts):
        out.append(f"cover(h)={whole} but disjuncts give {parts}")
    for g, got in zip(d.disjuncts, parts):
        bare = replace(d, disjuncts=(GuardedConjunction(g.atoms),))
        if got and not engine_covers(bare, p, suite):
            out.append("guarded disjunct covered but its body is not")
    if whole != engine_covers(d, p, suite, dedup=False):
        out.append("dedup changed the verdict")
    return out


def random_program_and_suites(rng: random.Random):
    p = gen_program(rng)
    big = gen_suite(rng, p, max_tests=6)
    small, big = _split(rng, big)
    return p, small, big
