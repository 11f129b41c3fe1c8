import random

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from htolcov.criteria import CriterionId
from htolcov.htol import Disj, parse_hyperlabel
from htolcov.minilang import parse_program
from htolcov.trace import parse_suite

import golden
from golden import DATA
from properties import (covered_ids, engine_covers, law_violations, monotonicity_violations,
                        random_program_and_suites, subsumption_violations)
from strategies import cases

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
ALL = [str(c) for c in CriterionId]


@SETTINGS
@given(st.randoms(use_true_random=False))
def test_subsumption(rng):
    p, _, suite = random_program_and_suites(rng)
    assert subsumption_violations(p, suite) == []


@SETTINGS
@given(st.randoms(use_true_random=False))
def test_adding_tests_is_monotone(rng):
    p, small, big = random_program_and_suites(rng)
    assert monotonicity_violations(p, small, big, ALL) == []


@SETTINGS
@given(cases())
def test_laws(case):
    assert law_violations(case.h, case.program, case.suite) == []


def test_subsumption_on_ex1():
    p = parse_program((DATA / "ex1.mimp").read_text())
    for rows in (golden.EX1_SUITE, "t1 | x=1, y=1, a=0, b=1\nt2 | x=0, y=1, a=0, b=1\n"):
        assert subsumption_violations(p, parse_suite(rows)) == []
    cov = covered_ids(p, parse_suite(golden.EX1_SUITE), ["RACC", "CC"])
    assert all(cov.values())


def test_disjunction_is_commutative_on_goldens():
    p = parse_program((DATA / "defuse.mimp").read_text())
    h4, h5 = parse_hyperlabel(golden.H4, p), parse_hyperlabel(golden.H5, p)
    for rows in ("t | x=1, c=1", "t | x=1, c=0", ""):
        s = parse_suite(rows)
        assert engine_covers(Disj(h4, h5), p, s) == engine_covers(Disj(h5, h4), p, s) == \
            (engine_covers(h4, p, s) or engine_covers(h5, p, s))


def test_seeded_generator_is_reproducible():
    a = random_program_and_suites(random.Random(7))
    b = random_program_and_suites(random.Random(7))
    assert a[0] == b[0] and a[2] == b[2]
