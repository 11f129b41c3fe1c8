from fractions import Fraction
from types import MappingProxyType

import pytest
from hypothesis import HealthCheck, given, settings

from htolcov.engine import (COVERED, UNCOVERED, UNKNOWN_BUDGET, AtomTable, CoverageReport,
                            CoverageVerdict, Measurement, consolidate, coverage_score, harvest,
                            match_sequence, replay_witness)
from htolcov.htol import Label, parse_hyperlabel
from htolcov.minilang import parse_program
from htolcov.normalize import normalize_dnf
from htolcov.trace import TestDatum, TestSuite, execute, parse_suite

import golden
from golden import DATA
from strategies import cases

EX1 = parse_program((DATA / "ex1.mimp").read_text())
DEFUSE = parse_program((DATA / "defuse.mimp").read_text())
CELLS = parse_program((DATA / "cells.mimp").read_text())


def suite(text):
    return parse_suite(text)


def one(tid="t", **values):
    return TestSuite((TestDatum(tid, MappingProxyType(values)),))


def test_label_occurrence_records_bindings():
    d = normalize_dnf(parse_hyperlabel(golden.H1, EX1))
    log = harvest(EX1, [d], one("t1", x=1, y=1, a=0, b=1))
    [occ] = log.of(0)
    assert occ.env_dict == {"c1": True, "c2": True}
    assert occ.test_id == "t1"
    assert log.of(1) == []


def test_bindings_no_guard_reads_are_pruned():
    d = normalize_dnf(parse_hyperlabel(golden.EX1_L, EX1))
    assert AtomTable.build([d]).relevant == [()]
    assert AtomTable.build([d], prune=False).relevant == [("c1", "c2")]
    [occ] = harvest(EX1, [d], one(x=1, y=1, a=0, b=1), dedup=False).of(0)
    assert occ.env_dict == {"c1": True, "c2": True}


def test_false_predicate_never_occurs():
    d = normalize_dnf(Label(2, parse_hyperlabel("l(loc2, false)", EX1).pred))
    assert len(harvest(EX1, [d], suite(golden.EX1_SUITE))) == 0


def test_same_env_at_two_steps_is_stored_once():
    p = parse_program("int main(int n) { int i := 0; while (i < 3) { i := i + 1; } return i; }")
    h = parse_hyperlabel("l(loc2, true){m <- n}", p)
    d = normalize_dnf(h)
    assert len(harvest(p, [d], one(n=5))) == 1
    assert len(harvest(p, [d], one(n=5), dedup=False)) == 4


def test_match_sequence_h4():
    seq = parse_hyperlabel(golden.H4, DEFUSE)
    [m] = match_sequence(execute(DEFUSE, one(x=1, c=1).tests[0]), seq)
    assert m.steps == (1, 4)
    assert match_sequence(execute(DEFUSE, one(x=1, c=0).tests[0]), seq) == []


def test_match_sequence_h9():
    h = parse_hyperlabel(golden.H9, CELLS)
    run = execute(CELLS, one(i=2, j=1, k=2).tests[0])
    [m] = match_sequence(run, h.body)
    assert m.env_dict == {"v1": 2, "v2": 2}
    # j == i kills the path through loc5
    assert match_sequence(execute(CELLS, one(i=2, j=2, k=2).tests[0]), h.body) == []


def test_match_sequence_keeps_every_env():
    p = parse_program("int main(int n) { int i := 0; while (i < 3) { i := i + 1; } return i; }")
    seq = parse_hyperlabel("[ l(loc2, true){a <- i} -> l(loc3, true){b <- i} ]", p)
    envs = {tuple(sorted(m.env)) for m in match_sequence(execute(p, one(n=0).tests[0]), seq)}
    # any loop-head visit followed by any later increment
    assert envs == {(("a", x), ("b", y)) for x in range(4) for y in range(3) if x <= y}


def test_consolidate_h1_h2():
    h1 = normalize_dnf(parse_hyperlabel(golden.H1, EX1), "h1")
    h2 = normalize_dnf(parse_hyperlabel(golden.H2, EX1), "h2")
    two = suite("t1 | x=1, y=1, a=0, b=1\nt2 | x=0, y=1, a=0, b=1\n")
    log = harvest(EX1, [h1, h2], two)
    v1, v2 = consolidate(h1, log), consolidate(h2, log)
    assert v1.status == COVERED and v2.status == UNCOVERED
    assert v1.witness.env == {"c1": True, "c2": True, "c1'": False, "c2'": True}
    assert v1.witness.tests == ["t1", "t2"]
    assert replay_witness(h1, v1.witness)


def test_empty_log_covers_nothing():
    h1 = normalize_dnf(parse_hyperlabel(golden.H1, EX1))
    log = harvest(EX1, [h1], TestSuite(()))
    assert consolidate(h1, log).status == UNCOVERED


def test_budget_exhaustion_is_reported():
    p = parse_program("int main(int n) { int i := 0; while (i < 40) { i := i + 1; } return i; }")
    h = parse_hyperlabel("guard(l(loc2, true){a <- i} . l(loc3, true){b <- i}) with (a + b < 0)", p)
    d = normalize_dnf(h, "h")
    log = harvest(p, [d], one(n=0))
    assert consolidate(d, log).status == UNCOVERED
    v = consolidate(d, log, budget=50)
    assert v.status == UNKNOWN_BUDGET
    rep = CoverageReport([v])
    assert rep.unknown == ["h"] and rep.score == 0 and not rep.passes(0.0)


def test_parallel_harvest_matches_sequential():
    objs = [parse_hyperlabel(t, EX1) for t in (golden.H1, golden.H2, golden.H7)]
    dnfs = [normalize_dnf(h, f"h{i}") for i, h in enumerate(objs)]
    s = suite(golden.EX1_SUITE + "t4 | x=0, y=0, a=5, b=1\nt5 | x=2, y=2, a=1, b=1\n")
    seq_out, par_out = {}, {}
    seq = harvest(EX1, dnfs, s, outcomes=seq_out)
    par = harvest(EX1, dnfs, s, workers=2, outcomes=par_out)
    assert par.occurrences == seq.occurrences
    assert list(par_out.items()) == list(seq_out.items())


def test_log_merge_is_order_insensitive_after_dedup():
    d = normalize_dnf(parse_hyperlabel(golden.H1, EX1))
    a = harvest(EX1, [d], suite("t1 | x=1, y=1, a=0, b=1\n"))
    b = harvest(EX1, [d], suite("t2 | x=2, y=2, a=0, b=1\nt3 | x=1, y=1, a=0, b=1\n"))
    envs = lambda log: {o.env for o in log.of(0)}
    assert envs(a.merge(b)) == envs(b.merge(a)) == {(("c1", True), ("c2", True))}


def test_atom_table_shares_atoms():
    h1 = normalize_dnf(parse_hyperlabel(golden.H1, EX1))
    h2 = normalize_dnf(parse_hyperlabel(golden.H2, EX1))
    t = AtomTable.build([h1, h2])
    assert len(t.atoms) == 2


def test_measurement_retires_covered_atoms():
    h = normalize_dnf(parse_hyperlabel("l(loc2, true)", EX1), "h")
    m = Measurement(EX1, [h])
    m.run_suite(suite(golden.EX1_SUITE))
    assert m.verdicts()[0].covered
    assert m.outcomes["t1"].kind == "returned"


def test_score():
    vs = [CoverageVerdict("a", COVERED), CoverageVerdict("b", UNCOVERED),
          CoverageVerdict("c", COVERED), CoverageVerdict("d", UNCOVERED)]
    assert coverage_score(vs) == Fraction(1, 2)
    assert coverage_score(vs[:1]) == 1
    assert coverage_score(vs[1:2]) == 0
    with pytest.warns(UserWarning):
        assert coverage_score([]) == 1


def _verdicts(case, **kw):
    d = normalize_dnf(case.h, "h")
    m = Measurement(case.program, [d], 2000, **kw)
    m.run_suite(case.suite)
    return m.verdicts()[0]


@settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(cases())
def test_engine_modes_agree(case):
    d = normalize_dnf(case.h, "h")
    batch = consolidate(d, harvest(case.program, [d], case.suite, 2000))
    eager = _verdicts(case, lazy=False, dedup=False)
    lazy = _verdicts(case)
    assert batch.status == eager.status == lazy.status


@settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(cases())
def test_witness_replays(case):
    d = normalize_dnf(case.h, "h")
    log = harvest(case.program, [d], case.suite, 2000)
    v = consolidate(d, log)
    if v.covered:
        assert replay_witness(d, v.witness)
        index = {a: i for i, a in enumerate(log.atoms)}
        want = [index[a] for a in d.disjuncts[v.witness.disjunct].atoms]
        assert [o.atom for o in v.witness.occurrences] == want
        for o in v.witness.occurrences:
            assert o in log.of(o.atom)
