"""Worked examples with hand-derived verdicts, shared by the golden tests
and the acceptance script.

Each case names a fixture program, a hyperlabel (hand-written HTL or an
objective id produced by an annotator), a suite and the expected verdict.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Optional, Tuple

from htolcov.criteria import annotate
from htolcov.htol import Hyperlabel, parse_hyperlabel
from htolcov.minilang import LocatedProgram, parse_program
from htolcov.trace import TestSuite, parse_suite

DATA = Path(__file__).parent / "data"

EX1_L = "l(loc2, x == y && a < b){c1 <- x == y; c2 <- a < b}"
EX1_L2 = "l(loc2, !(x == y && a < b)){c1' <- x == y; c2' <- a < b}"
H1 = f"guard({EX1_L} . {EX1_L2}) with (c1 != c1' && c2 == c2')"
H2 = f"guard({EX1_L} . {EX1_L2}) with (c1 == c1' && c2 != c2')"
H3 = "l(loc4, true) + l(loc6, true)"
H4 = "[ l(loc1, true) -> l(loc4, true) ]"
H5 = "[ l(loc1, true) -> l(loc5, true) ]"
H6 = ("guard([ l(loc1, true){lo <- low} -> l(loc3, true){r <- res} ] . "
      "[ l(loc1, true){lo' <- low} -> l(loc3, true){r' <- res} ]) with (lo == lo' && r != r')")
D1 = "x == y && a < b"
ACTIVE1 = "(true && a < b) != (false && a < b)"
H7 = (f"guard(l(loc2, x == y && {ACTIVE1}){{r <- {D1}}} . "
      f"l(loc2, x != y && {ACTIVE1}){{r' <- {D1}}}) with (r != r')")
H8 = f"{H4} + {H5}"
H9 = ("guard([ l(loc4, true){v1 <- i} ->(pc == loc5 => j != v1) l(loc6, true){v2 <- k} ]) "
      "with (v1 == v2)")

EX1_SUITE = "t1 | x=1, y=1, a=0, b=1\nt2 | x=0, y=1, a=0, b=1\nt3 | x=1, y=1, a=2, b=1\n"


@dataclass(frozen=True)
class GoldenCase:
    name: str
    program: str                 # fixture file stem
    suite: str                   # .suite text
    expected: bool
    htl: Optional[str] = None    # hand-written hyperlabel
    objective: Optional[Tuple[str, str]] = None  # (criterion, id) from an annotator
    entry: Optional[str] = None
    array_cells: bool = False

    def load(self) -> Tuple[LocatedProgram, Hyperlabel, TestSuite]:
        p = _program(self.program, self.entry)
        if self.htl is not None:
            h = parse_hyperlabel(self.htl, p)
        else:
            crit, oid = self.objective
            objs = annotate(p, crit, array_cells=self.array_cells).objectives
            h = next(o.h for o in objs if o.id == oid)
        return p, h, parse_suite(self.suite)


@lru_cache(maxsize=None)
def _program(stem: str, entry: Optional[str]) -> LocatedProgram:
    return parse_program((DATA / f"{stem}.mimp").read_text(), entry)


def _tests(*rows: str) -> str:
    return "".join(f"t{i + 1} | {r}\n" for i, r in enumerate(rows))


G = GoldenCase
CASES = [
    # MC/DC on a two-condition decision
    G("h1 hand, 3 tests", "ex1", EX1_SUITE, True, htl=H1),
    G("h2 hand, 3 tests", "ex1", EX1_SUITE, True, htl=H2),
    G("h1 annotated RACC, 3 tests", "ex1", EX1_SUITE, True, objective=("RACC", "racc_2_c1")),
    G("h2 annotated RACC, 3 tests", "ex1", EX1_SUITE, True, objective=("RACC", "racc_2_c2")),
    G("h1 covered by TT and FT", "ex1", _tests("x=1, y=1, a=0, b=1", "x=0, y=1, a=0, b=1"), True, htl=H1),
    G("h2 not covered by TT and FT", "ex1", _tests("x=1, y=1, a=0, b=1", "x=0, y=1, a=0, b=1"), False, htl=H2),
    G("h1 not covered by TT alone", "ex1", _tests("x=1, y=1, a=0, b=1"), False, htl=H1),
    G("h1 not covered by FT and FF", "ex1", _tests("x=0, y=1, a=0, b=1", "x=0, y=1, a=2, b=1"), False, htl=H1),
    G("h1 empty suite", "ex1", "", False, htl=H1),
    # GACC labels l3/l4 and CACC h7
    G("l3 covered by TT", "ex1", _tests("x=1, y=1, a=0, b=1"), True, objective=("GACC", "gacc_2_c1t")),
    G("l3 not covered when c2 masks c1", "ex1", _tests("x=1, y=1, a=2, b=1"), False,
      objective=("GACC", "gacc_2_c1t")),
    G("l4 covered by FT", "ex1", _tests("x=0, y=1, a=0, b=1"), True, objective=("GACC", "gacc_2_c1f")),
    G("h7 hand, TT and FT", "ex1", _tests("x=1, y=1, a=0, b=1", "x=0, y=1, a=0, b=1"), True, htl=H7),
    G("h7 annotated, TT and FT", "ex1", _tests("x=1, y=1, a=0, b=1", "x=0, y=1, a=0, b=1"), True,
      objective=("CACC", "cacc_2_c1")),
    G("h7 annotated, TT and TF", "ex1", _tests("x=1, y=1, a=0, b=1", "x=1, y=1, a=2, b=1"), False,
      objective=("CACC", "cacc_2_c1")),
    # call coverage
    G("h3 first branch", "calls", _tests("x=1, y=0"), True, htl=H3, entry="f"),
    G("h3 second branch", "calls", _tests("x=0, y=1"), True, htl=H3, entry="f"),
    G("h3 no branch", "calls", _tests("x=0, y=0", "x=-1, y=-2"), False, htl=H3, entry="f"),
    G("h3 annotated FCC", "calls", _tests("x=0, y=5"), True, objective=("FCC", "fcc_f_g"), entry="f"),
    G("h3 annotated FCC, no branch", "calls", _tests("x=0, y=0"), False,
      objective=("FCC", "fcc_f_g"), entry="f"),
    # def-use paths and all-defs
    G("h4 then-branch", "defuse", _tests("x=3, c=1"), True, htl=H4),
    G("h4 else-branch", "defuse", _tests("x=3, c=0"), False, htl=H4),
    G("h5 else-branch", "defuse", _tests("x=3, c=0"), True, htl=H5),
    G("h4 annotated ALL_USES", "defuse", _tests("x=3, c=1"), True,
      objective=("ALL_USES", "au_main_a_1_4")),
    G("h5 annotated ALL_USES", "defuse", _tests("x=3, c=1"), False,
      objective=("ALL_USES", "au_main_a_1_5")),
    G("h8 hand, either branch", "defuse", _tests("x=3, c=0"), True, htl=H8),
    G("h8 annotated ALL_DEFS", "defuse", _tests("x=3, c=1"), True,
      objective=("ALL_DEFS", "ad_main_a_1")),
    G("h8 empty suite", "defuse", "", False, htl=H8),
    # non-interference
    G("h6 same low, different res", "flow", _tests("high=0, low=3", "high=1, low=3"), True, htl=H6),
    G("h6 different low", "flow", _tests("high=0, low=3", "high=1, low=4"), False, htl=H6),
    G("h6 same low, same res", "flow", _tests("high=2, low=3", "high=2, low=3"), False, htl=H6),
    G("h6 one test", "flow", _tests("high=0, low=3"), False, htl=H6),
    # array cells: the pair loc4 -> loc6 needs i == k != j
    G("h9 hand, foo(2,1,2)", "cells", _tests("i=2, j=1, k=2"), True, htl=H9),
    G("h9 hand, foo(2,2,2)", "cells", _tests("i=2, j=2, k=2"), False, htl=H9),
    G("h9 hand, foo(2,1,3)", "cells", _tests("i=2, j=1, k=3"), False, htl=H9),
    G("h9 annotated, foo(2,1,2)", "cells", _tests("i=2, j=1, k=2"), True,
      objective=("ALL_USES", "au_main_a_4_6_r0"), array_cells=True),
    G("h9 annotated, foo(2,2,2)", "cells", _tests("i=2, j=2, k=2"), False,
      objective=("ALL_USES", "au_main_a_4_6_r0"), array_cells=True),
]
