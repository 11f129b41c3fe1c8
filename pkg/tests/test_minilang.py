import pytest
from hypothesis import given, settings

from htolcov.errors import SyntaxErr, TypeErr
from htolcov.minilang import build_callgraph, build_cfg, compute_def_use, parse_program, print_program
from htolcov.minilang.defuse import DuPair, VarRef

from golden import DATA
from strategies import programs

EX1 = (DATA / "ex1.mimp").read_text()
DEFUSE = (DATA / "defuse.mimp").read_text()
CALLS = (DATA / "calls.mimp").read_text()


def test_locations_are_preorder_with_entries_last():
    p = parse_program(DEFUSE)
    kinds = [p.kind(l) for l in p.locations]
    assert kinds == ["decl", "decl", "if", "assign", "assign", "return", "entry"]
    assert p.entry == "main"
    assert p.entry_function.entry_loc == 7


def test_decision_location_sees_condition():
    p = parse_program(EX1)
    [(loc, d)] = p.decisions()
    assert loc == 2
    assert p.kind(loc) == "if"
    assert set(p.scope(loc)) == {"x", "y", "a", "b", "r"}


def test_default_entry_is_first_function_without_main():
    p = parse_program(CALLS)
    assert p.entry == "g"
    assert parse_program(CALLS, "f").entry == "f"


def test_unknown_entry():
    with pytest.raises(TypeErr, match="entry function"):
        parse_program(CALLS, "nope")


@pytest.mark.parametrize("src, match", [
    ("int main(int x) { y := 1; return x; }", "undeclared"),
    ("int main(int x) { int x := 1; return x; }", "redeclaration"),
    ("int main(int x) { bool b := x; return x; }", "expected bool"),
    ("int main(int a[2]) { int c[2]; c := a; return 0; }", "whole array"),
    ("int main(int x) { int r := g(x); return r; }", "undefined function"),
    ("int main(int x) { if (x) { return 1; } return 0; }", "expected bool"),
])
def test_type_errors(src, match):
    with pytest.raises(TypeErr, match=match):
        parse_program(src)


@pytest.mark.parametrize("src", [
    "int main(int x) { return x }",
    "int main(int x { return x; }",
    "int main(int x) { x = 1; return x; }",
])
def test_syntax_errors_carry_position(src):
    with pytest.raises(SyntaxErr) as ei:
        parse_program(src)
    assert ei.value.line >= 1


def test_printer_round_trip_fixtures():
    for f in sorted(DATA.glob("*.mimp")):
        p = parse_program(f.read_text())
        again = parse_program(print_program(p))
        assert again.functions == p.functions, f.name


@settings(max_examples=60, deadline=None)
@given(programs())
def test_printer_round_trip_random(p):
    assert parse_program(print_program(p)).functions == p.functions


def test_cfg_if_else():
    p = parse_program(DEFUSE)
    g = build_cfg(p)["main"]
    assert g.successors(7) == [1]
    assert sorted(g.successors(3)) == [4, 5]
    assert g.successors(4) == [6] and g.successors(5) == [6]
    assert g.branch_nodes == [3]
    assert g.cyclomatic_complexity() == 2
    assert g.reachable(1, 6, avoid={4}) and not g.reachable(1, 6, avoid={4, 5})


def test_cfg_while_loop_and_blocks():
    src = "int main(int n) { int i := 0; while (i < n) { i := i + 1; } return i; }"
    g = build_cfg(parse_program(src))["main"]
    assert len(g.back_edges()) == 1
    assert g.is_reducible()
    leads = [b[0] for b in g.basic_blocks()]
    assert 2 in leads and 3 in leads and 4 in leads


def test_callgraph_call_sites_in_order():
    cg = build_callgraph(parse_program(CALLS, "f"))
    assert cg.edges == {("f", "g"): [4, 6]}
    assert cg.callees("f") == ["g"]


def test_def_use_pairs():
    p = parse_program(DEFUSE)
    info = compute_def_use(p, build_cfg(p))
    a = VarRef("main", "a")
    assert info.pairs_from(a, 1) == [DuPair(a, 1, 4), DuPair(a, 1, 5)]
    assert info.defs[VarRef("main", "res")] == {2, 4, 5}
    # res := 0 at loc2 is killed on every path
    assert not info.pairs_from(VarRef("main", "res"), 2)
