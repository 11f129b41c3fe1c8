import pytest

from htolcov.engine import Oracle, OracleRefused, oracle_covering_envs, oracle_covers
from htolcov.htol import parse_hyperlabel
from htolcov.minilang import parse_program
from htolcov.trace import TestSuite, parse_suite

import golden
from golden import DATA

CALLS = parse_program((DATA / "calls.mimp").read_text(), "f")
FLOW = parse_program((DATA / "flow.mimp").read_text())
EX1 = parse_program((DATA / "ex1.mimp").read_text())


def test_disjunction_left():
    h = parse_hyperlabel(golden.H3, CALLS)
    assert oracle_covers(h, CALLS, parse_suite("t | x=1, y=0"))
    assert oracle_covers(h.left, CALLS, parse_suite("t | x=1, y=0"))
    assert not oracle_covers(h.right, CALLS, parse_suite("t | x=1, y=0"))


def test_empty_suite_covers_nothing():
    for text in (golden.H1, golden.H2, "l(loc2, true)"):
        assert not oracle_covers(parse_hyperlabel(text, EX1), EX1, TestSuite(()))


def test_h6_covering_environments():
    h = parse_hyperlabel(golden.H6, FLOW)
    s = parse_suite("a | high=0, low=3\nb | high=1, low=3")
    envs = oracle_covering_envs(h, FLOW, s)
    assert sorted(dict(e)["r"] for e in envs) == [0, 1]
    for e in envs:
        e = dict(e)
        assert e["lo"] == e["lo'"] == 3 and e["r"] != e["r'"]


def test_domains_extend_candidates():
    h = parse_hyperlabel("guard(l(loc2, true){m <- x}) with (m == 1)", EX1)
    o = Oracle.of(EX1, parse_suite("t | x=1, y=1, a=0, b=1"))
    assert o.candidates(h, {"m": [7, 8]})["m"] == [7, 8, 1]
    assert o.covered(h, {"m": [7, 8]})
    assert o.witness(h) == {"m": 1}


def test_refuses_large_instances():
    p = parse_program("int main(int n) { int i := 0; while (i < 100) { i := i + 1; } return i; }")
    h = parse_hyperlabel("l(loc2, true){a <- i} . l(loc3, true){b <- i} . l(loc2, true){c <- i}", p)
    o = Oracle.of(p, parse_suite("t | n=0"))
    with pytest.raises(OracleRefused):
        list(o.environments(h))


def test_sequence_intermediate_predicate():
    cells = parse_program((DATA / "cells.mimp").read_text())
    h = parse_hyperlabel(golden.H9, cells)
    assert oracle_covers(h, cells, parse_suite("t | i=1, j=0, k=1"))
    assert not oracle_covers(h, cells, parse_suite("t | i=1, j=1, k=1"))
