"""Static def-use information (arrays are treated as whole variables)."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Set, Tuple

from ..expr import Index, Var, walk
from .ast import Assign, Decl, stmt_exprs
from .cfg import CFG, EXIT
from .program import LocatedProgram


class VarRef(NamedTuple):
    """A variable is identified by its function and name."""

    function: str
    name: str

    def __str__(self) -> str:
        return f"{self.function}.{self.name}"


class DuPair(NamedTuple):
    var: VarRef
    def_loc: int
    use_loc: int


@dataclass
class DefUseInfo:
    defs: Dict[VarRef, Set[int]]
    uses: Dict[VarRef, Set[int]]
    du_pairs: List[DuPair]

    def pairs_from(self, var: VarRef, def_loc: int) -> List[DuPair]:
        return [d for d in self.du_pairs if d.var == var and d.def_loc == def_loc]


def defs_at(p: LocatedProgram, loc: int) -> Set[str]:
    info = p.location_table[loc]
    if info.kind == "entry":
        return {prm.name for prm in p.function(info.function).params}
    s = info.node
    if isinstance(s, Decl):
        return {s.name}
    if isinstance(s, Assign):
        return {s.target}
    return set()


def uses_at(p: LocatedProgram, loc: int) -> Set[str]:
    s = p.location_table[loc].node
    if s is None:
        return set()
    out: Set[str] = set()
    for e in stmt_exprs(s):
        for n in walk(e):
            if isinstance(n, (Var, Index)):
                out.add(n.name)
    return out


def compute_def_use(p: LocatedProgram, cfg: CFG) -> DefUseInfo:
    defs: Dict[VarRef, Set[int]] = {}
    uses: Dict[VarRef, Set[int]] = {}
    pairs: Set[DuPair] = set()
    for f in p.functions:
        g = cfg[f.name]
        gen: Dict[int, Set[Tuple[str, int]]] = {}
        killed: Dict[int, Set[str]] = {}
        for n in g.nodes:
            d = defs_at(p, n)
            killed[n] = d
            gen[n] = {(v, n) for v in d}
            for v in d:
                defs.setdefault(VarRef(f.name, v), set()).add(n)
            for v in uses_at(p, n):
                uses.setdefault(VarRef(f.name, v), set()).add(n)
        # reaching definitions, forward may-analysis
        reach_in: Dict[int, Set[Tuple[str, int]]] = {n: set() for n in g.nodes}
        reach_out: Dict[int, Set[Tuple[str, int]]] = {n: set(gen[n]) for n in g.nodes}
        work = sorted(g.nodes)
        while work:
            n = work.pop(0)
            new_in = set()
            for m in g.predecessors(n):
                new_in |= reach_out[m]
            reach_in[n] = new_in
            new_out = gen[n] | {(v, d) for (v, d) in new_in if v not in killed[n]}
            if new_out != reach_out[n]:
                reach_out[n] = new_out
                for m in g.successors(n):
                    if m != EXIT and m not in work:
                        work.append(m)
        for n in g.nodes:
            used = uses_at(p, n)
            for (v, d) in reach_in[n]:
                if v in used:
                    pairs.add(DuPair(VarRef(f.name, v), d, n))
    return DefUseInfo(defs, uses, sorted(pairs, key=lambda x: (x.def_loc, x.use_loc, x.var)))
