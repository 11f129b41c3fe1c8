"""Static call graph."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Set, Tuple

from ..errors import TypeErr
from .ast import iter_stmts, rhs_call
from .program import LocatedProgram


@dataclass
class CallGraph:
    nodes: Set[str]
    # (caller, callee) -> call-site locations in source order
    edges: Dict[Tuple[str, str], List[int]]

    def callees(self, caller: str) -> List[str]:
        return [g for (f, g) in self.edges if f == caller]


def build_callgraph(p: LocatedProgram) -> CallGraph:
    names = {f.name for f in p.functions}
    edges: Dict[Tuple[str, str], List[int]] = {}
    for f in p.functions:
        for s in iter_stmts(f.body):
            call = rhs_call(s)
            if call is None:
                continue
            if call.func not in names:
                raise TypeErr(f"call to undefined function {call.func!r}", *s.span)
            edges.setdefault((f.name, call.func), []).append(s.loc)
    return CallGraph(names, edges)
