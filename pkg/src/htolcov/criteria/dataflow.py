"""ALL_USES / ALL_DEFS, with optional cell-precise treatment of arrays.

A du pair (v, d, u) becomes the sequence ``(d, true) ->(phi) (u, true)`` where
``phi`` forbids passing through another definition of v.  Definitions that
lie on no CFG path from d to u are left out of ``phi`` unless the function
can be re-entered within a run (it is called somewhere), in which case a
match could span two invocations.

With ``array_cells``, a pair from an element write ``a[i] := ..`` to an
element read ``a[k]`` binds both indices, guards them equal and lets other
element writes through unless they hit the same cell.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from ..errors import AnnotationError
from ..expr import TRUE, Binary, Expr, Index, IntLit, LocLit, Meta, Pc, Var, and_all, walk
from ..htol.ast import Guard, Hyperlabel, Label, Objective, Sequence, disj
from ..minilang.ast import Assign, stmt_exprs
from ..minilang.callgraph import build_callgraph
from ..minilang.cfg import CFG, FunctionCFG, build_cfg
from ..minilang.defuse import DefUseInfo, VarRef, compute_def_use
from ..minilang.program import LocatedProgram
from .base import CriterionId, fresh_name

ALL_USES, ALL_DEFS = CriterionId.ALL_USES, CriterionId.ALL_DEFS


@dataclass(frozen=True)
class _Pair:
    var: VarRef
    d: int
    u: int
    read: Optional[int] = None  # index of the element read at u (cell pairs)
    h: Hyperlabel = None


class _Dataflow:
    def __init__(self, p: LocatedProgram, array_cells: bool):
        self.p = p
        self.array_cells = array_cells
        self.cfg: CFG = build_cfg(p)
        self.info: DefUseInfo = compute_def_use(p, self.cfg)
        called = {g for (_, g) in build_callgraph(p).edges}
        self.reentrant = {f.name: f.name in called for f in p.functions}
        taken = set(p.all_variables())
        self.v1 = fresh_name("v1", taken)
        self.v2 = fresh_name("v2", taken)

    # -------------------------------------------------------------- helpers

    def graph(self, var: VarRef) -> FunctionCFG:
        return self.cfg[var.function]

    def kills(self, var: VarRef, d: int, u: int) -> List[int]:
        others = sorted(self.info.defs.get(var, set()) - {d})
        if self.reentrant[var.function]:
            return others
        g = self.graph(var)
        return [w for w in others if g.reachable(d, w) and g.reachable(w, u)]

    def element_write(self, loc: int, name: str) -> Optional[Expr]:
        s = self.p.stmt(loc)
        if isinstance(s, Assign) and s.target == name and s.index is not None:
            return s.index
        return None

    def element_reads(self, loc: int, name: str) -> List[Expr]:
        s = self.p.stmt(loc)
        if s is None:
            return []
        return [n.index for e in stmt_exprs(s) for n in walk(e)
                if isinstance(n, Index) and n.name == name]

    def whole_use(self, loc: int, name: str) -> bool:
        s = self.p.stmt(loc)
        if s is None:
            return False
        return any(isinstance(n, Var) and n.name == name for e in stmt_exprs(s) for n in walk(e))

    def is_array(self, var: VarRef, loc: int) -> bool:
        t = self.p.scope(loc).get(var.name)
        return t is not None and not isinstance(t, str)

    # -------------------------------------------------------------- encodings

    def scalar(self, var: VarRef, d: int, u: int, pad: Optional[Expr] = None) -> Hyperlabel:
        phi = and_all(Binary("!=", Pc(), LocLit(w)) for w in self.kills(var, d, u))
        if pad is None:
            return Sequence((Label(d), Label(u)), (phi,))
        # same names as the cell pairs it is disjoined with
        return Sequence((Label(d, TRUE, ((self.v1, pad),)), Label(u, TRUE, ((self.v2, IntLit(0)),))),
                        (phi,))

    def cell(self, var: VarRef, d: int, u: int, read: Expr) -> Hyperlabel:
        v1 = Meta(self.v1)
        parts = []
        for w in self.kills(var, d, u):
            idx = self.element_write(w, var.name)
            if idx is None:
                parts.append(Binary("!=", Pc(), LocLit(w)))
            else:
                parts.append(Binary("=>", Binary("==", Pc(), LocLit(w)), Binary("!=", idx, v1)))
        first = Label(d, TRUE, ((self.v1, self.element_write(d, var.name)),))
        second = Label(u, TRUE, ((self.v2, read),))
        return Guard(Sequence((first, second), (and_all(parts),)),
                     Binary("==", v1, Meta(self.v2)))

    # -------------------------------------------------------------- pairs

    def pairs(self) -> List[_Pair]:
        out: List[_Pair] = []
        static = {(pr.var, pr.def_loc, pr.use_loc) for pr in self.info.du_pairs}
        cell_defs: Set[Tuple[VarRef, int]] = set()
        if self.array_cells:
            for var, defs in sorted(self.info.defs.items()):
                g = self.graph(var)
                whole = {w for w in defs if self.element_write(w, var.name) is None}
                for d in sorted(defs):
                    if self.element_write(d, var.name) is None or not self.is_array(var, d):
                        continue
                    cell_defs.add((var, d))
                    for u in sorted(self.info.uses.get(var, ())):
                        reads = self.element_reads(u, var.name)
                        if reads and g.reachable(d, u, avoid=whole - {d}):
                            for k, r in enumerate(reads):
                                out.append(_Pair(var, d, u, k, self.cell(var, d, u, r)))
        for var, d, u in sorted(static, key=lambda x: (x[1], x[2], x[0])):
            if (var, d) in cell_defs and not self.whole_use(u, var.name):
                continue
            out.append(_Pair(var, d, u, None, self.scalar(var, d, u)))
        out.sort(key=lambda pr: (pr.d, pr.var, pr.u, -1 if pr.read is None else pr.read))
        return out


def _pair_id(pr: _Pair) -> str:
    base = f"{pr.var.function}_{pr.var.name}_{pr.d}_{pr.u}"
    return base if pr.read is None else f"{base}_r{pr.read}"


def annotate_dataflow(p: LocatedProgram, variant: CriterionId,
                      array_cells: bool = False) -> List[Objective]:
    variant = CriterionId(variant)
    if variant not in (ALL_USES, ALL_DEFS):
        raise AnnotationError(f"{variant} is not a dataflow criterion")
    df = _Dataflow(p, array_cells)
    pairs = df.pairs()
    crit = str(variant)
    out: List[Objective] = []
    if variant is ALL_USES:
        for pr in pairs:
            what = f"{pr.var} defined at loc{pr.d}, used at loc{pr.u}"
            if pr.read is not None:
                what += f" (cell read {pr.read})"
            out.append(Objective(f"au_{_pair_id(pr)}", pr.h, crit, what))
        return out
    groups: Dict[Tuple[VarRef, int], List[_Pair]] = {}
    for pr in pairs:
        groups.setdefault((pr.var, pr.d), []).append(pr)
    for (var, d), prs in groups.items():
        hs = [pr.h for pr in prs]
        if any(pr.read is not None for pr in prs):
            # disjuncts must bind the same names
            pad = df.element_write(d, var.name)
            hs = [pr.h if pr.read is not None else df.scalar(var, d, pr.u, pad) for pr in prs]
        uses = ", ".join(f"loc{pr.u}" for pr in prs)
        out.append(Objective(f"ad_{var.function}_{var.name}_{d}", disj(*hs), crit,
                             f"{var} defined at loc{d}, used at any of {uses}"))
    return out
