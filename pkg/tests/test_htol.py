import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from htolcov.errors import HTLError
from htolcov.expr import Binary, Fault, IntLit, Meta, Var
from htolcov.htol import (Conj, Disj, Guard, Label, Objective, Sequence, check_scoping,
                          check_well_formed, depth, eval_bindings, eval_guard, is_well_formed,
                          meta_types, parse_htl, parse_hyperlabel, print_htl, print_hyperlabel,
                          visible_names)
from htolcov.minilang import parse_program

import golden
from golden import DATA
from strategies import gen_hyperlabel, gen_program

EX1 = parse_program((DATA / "ex1.mimp").read_text())
FLOW = parse_program((DATA / "flow.mimp").read_text())
CELLS = parse_program((DATA / "cells.mimp").read_text())


def lab(loc, *names):
    return Label(loc, bindings=tuple((n, IntLit(0)) for n in names))


def test_h1_structure():
    h = parse_hyperlabel(golden.H1, EX1)
    assert isinstance(h, Guard) and isinstance(h.body, Conj)
    left, right = h.body.left, h.body.right
    assert left.loc == right.loc == 2
    assert left.names == ["c1", "c2"] and right.names == ["c1'", "c2'"]
    assert visible_names(h) == {"c1", "c2", "c1'", "c2'"}
    assert meta_types(h, EX1) == {n: "bool" for n in ("c1", "c2", "c1'", "c2'")}


def test_h9_structure():
    h = parse_hyperlabel(golden.H9, CELLS)
    seq = h.body
    assert isinstance(seq, Sequence)
    assert [l.loc for l in seq.elems] == [4, 6]
    assert visible_names(h) == {"v1", "v2"}


@pytest.mark.parametrize("text", [golden.H1, golden.H2, golden.H7])
def test_print_parse_round_trip_ex1(text):
    h = parse_hyperlabel(text, EX1)
    assert parse_hyperlabel(print_hyperlabel(h), EX1) == h


def test_documents_with_let_and_comments():
    text = f"""
    # two MC/DC objectives
    let l = {golden.EX1_L}
    let l' = {golden.EX1_L2}
    h1 = guard(l . l') with (c1 != c1' && c2 == c2')
    h2 = guard(l . l') with (c1 == c1' && c2 != c2')
    """
    objs = parse_htl(text, EX1)
    assert [o.id for o in objs] == ["h1", "h2"]
    assert objs[0].h == parse_hyperlabel(golden.H1, EX1)
    assert parse_htl(print_htl(objs), EX1) == objs


@pytest.mark.parametrize("text, match", [
    ("l(loc99, true)", "unknown location"),
    ("l(loc2, q)", "q"),
    ("l(loc2, x)", "expected bool"),
    ("guard(l(loc2, true){m <- x}) with (n == 1)", "not a visible name"),
    ("l(loc2, true){m <- x} . l(loc2, true){m <- y}", "bound on both sides"),
    ("l(loc2, true){m <- x} + l(loc2, true)", "disjunction"),
    ("[ l(loc1, true){m <- x} -> l(loc2, true){m <- y} ]", "both bind"),
    ("[ l(loc1, true) ->(m == 1) l(loc2, true){m <- y} ]", "undeclared variable 'm'"),
    ("l(loc2, true", "expected"),
])
def test_htl_errors(text, match):
    with pytest.raises(HTLError, match=match):
        parse_hyperlabel(text, EX1)


def test_visible_names_rules():
    a, b = lab(1, "x"), lab(2, "y")
    assert visible_names(Conj(a, b)) == {"x", "y"}
    assert visible_names(Disj(a, b)) == frozenset()
    assert visible_names(Guard(a, Binary("==", Meta("x"), IntLit(1)))) == {"x"}
    assert visible_names(Sequence((a, b), (IntLit(1),))) == {"x", "y"}


def test_well_formedness():
    a, a2, b = lab(1, "x"), lab(3, "x"), lab(2, "y")
    assert is_well_formed(Disj(a, a2))
    assert not is_well_formed(Disj(a, b))
    assert is_well_formed(Conj(a, b))
    assert check_well_formed(Conj(a, a2)) == ["conjunction: {x} bound on both sides"]
    assert not is_well_formed(Label(1, bindings=(("x", IntLit(0)), ("x", IntLit(1)))))


def test_scoping():
    a = lab(1, "x")
    g = Guard(a, Binary("==", Meta("y"), IntLit(1)))
    assert check_scoping(g) == ["guard reads {y}, not visible in its hyperlabel"]


def test_eval_bindings_and_guard():
    b = (("c1", Binary("==", Var("x"), Var("y"))), ("s", Binary("+", Var("x"), IntLit(1))))
    env = eval_bindings(b, {"x": 2, "y": 2})
    assert env == {"c1": True, "s": 3}
    assert eval_guard(Binary("==", Meta("s"), IntLit(3)), env)
    with pytest.raises(ValueError):
        eval_guard(Meta("zz"), env)
    with pytest.raises(Fault):
        eval_bindings((("d", Binary("/", Var("x"), IntLit(0))),), {"x": 1})


def test_depth():
    a, b = lab(1), lab(2)
    assert depth(a) == 0
    assert depth(Guard(Conj(a, Disj(a, b)), IntLit(1))) == 3


def test_objective_defaults():
    o = Objective("h", lab(1))
    assert o.criterion == "" and o.origin == ""


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_random_hyperlabels_round_trip(rng):
    p = gen_program(rng)
    h = gen_hyperlabel(rng, p)
    assert is_well_formed(h) and not check_scoping(h)
    assert parse_hyperlabel(print_hyperlabel(h), p) == h
