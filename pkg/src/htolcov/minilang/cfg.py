"""Intraprocedural control-flow graphs over LocationIds."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Set, Tuple

from .ast import If, Return, While
from .program import LocatedProgram

EXIT = 0  # virtual exit node of every function graph

FALLTHROUGH = "fallthrough"
BRANCH_TRUE = "branch-true"
BRANCH_FALSE = "branch-false"


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    kind: str


@dataclass
class FunctionCFG:
    name: str
    entry: int
    nodes: FrozenSet[int]
    edges: Tuple[Edge, ...]
    exit: int = EXIT
    succ: Dict[int, List[Edge]] = field(default_factory=dict, repr=False)
    pred: Dict[int, List[Edge]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for n in list(self.nodes) + [self.exit]:
            self.succ.setdefault(n, [])
            self.pred.setdefault(n, [])
        for e in self.edges:
            self.succ[e.src].append(e)
            self.pred[e.dst].append(e)

    def successors(self, n: int) -> List[int]:
        return [e.dst for e in self.succ[n]]

    def predecessors(self, n: int) -> List[int]:
        return [e.src for e in self.pred[n]]

    @property
    def branch_nodes(self) -> List[int]:
        return sorted(n for n in self.nodes if any(e.kind != FALLTHROUGH for e in self.succ[n]))

    def reachable(self, src: int, dst: int, avoid: Set[int] = frozenset()) -> bool:
        """Is there a path of length >= 1 from ``src`` to ``dst`` whose
        strictly-intermediate nodes avoid ``avoid``?"""
        seen: Set[int] = set()
        stack = [src]
        while stack:
            n = stack.pop()
            for m in self.successors(n):
                if m == dst:
                    return True
                if m in seen or m in avoid:
                    continue
                seen.add(m)
                stack.append(m)
        return False

    def dominators(self) -> Dict[int, Set[int]]:
        order = self._reverse_postorder()
        dom = {n: set(order) for n in order}
        dom[self.entry] = {self.entry}
        changed = True
        while changed:
            changed = False
            for n in order:
                if n == self.entry:
                    continue
                preds = [p for p in self.predecessors(n) if p in dom]
                new = set.intersection(*(dom[p] for p in preds)) if preds else set()
                new = new | {n}
                if new != dom[n]:
                    dom[n] = new
                    changed = True
        return dom

    def back_edges(self) -> List[Edge]:
        dom = self.dominators()
        return [e for e in self.edges if e.src in dom and e.dst in dom[e.src]]

    def is_reducible(self) -> bool:
        """Removing dominator back edges must leave an acyclic graph."""
        back = set(self.back_edges())
        indeg: Dict[int, int] = {n: 0 for n in self.succ}
        for e in self.edges:
            if e not in back:
                indeg[e.dst] += 1
        ready = [n for n, d in indeg.items() if d == 0]
        seen = 0
        while ready:
            n = ready.pop()
            seen += 1
            for e in self.succ[n]:
                if e in back:
                    continue
                indeg[e.dst] -= 1
                if indeg[e.dst] == 0:
                    ready.append(e.dst)
        return seen == len(indeg)

    def cyclomatic_complexity(self) -> int:
        return len(self.edges) - (len(self.nodes) + 1) + 2

    def basic_blocks(self) -> List[List[int]]:
        """Maximal straight-line chains, ordered by their leader."""
        nodes = self._reverse_postorder()
        leaders = set()
        for n in nodes:
            preds = self.pred[n]
            if n == self.entry or len(preds) != 1:
                leaders.add(n)
            elif len(self.succ[preds[0].src]) != 1:
                leaders.add(n)
        blocks = []
        for lead in [n for n in nodes if n in leaders]:
            block = [lead]
            n = lead
            while len(self.succ[n]) == 1:
                m = self.succ[n][0].dst
                if m == EXIT or m in leaders:
                    break
                block.append(m)
                n = m
            blocks.append(block)
        return blocks

    def _reverse_postorder(self) -> List[int]:
        seen: Set[int] = set()
        post: List[int] = []

        def visit(n: int):
            seen.add(n)
            for m in self.successors(n):
                if m != EXIT and m not in seen:
                    visit(m)
            post.append(n)

        visit(self.entry)
        return post[::-1]


@dataclass
class CFG:
    functions: Dict[str, FunctionCFG]

    def __getitem__(self, name: str) -> FunctionCFG:
        return self.functions[name]

    def of_location(self, p: LocatedProgram, loc: int) -> FunctionCFG:
        return self.functions[p.function_of(loc)]


def build_cfg(p: LocatedProgram) -> CFG:
    graphs = {}
    for f in p.functions:
        edges: List[Edge] = []
        nodes: Set[int] = {f.entry_loc}

        def seq(body, follow: int) -> int:
            nxt = follow
            for s in reversed(body):
                nxt = node(s, nxt)
            return nxt

        def node(s, follow: int) -> int:
            nodes.add(s.loc)
            if isinstance(s, If):
                edges.append(Edge(s.loc, seq(s.then, follow), BRANCH_TRUE))
                edges.append(Edge(s.loc, seq(s.orelse, follow), BRANCH_FALSE))
            elif isinstance(s, While):
                edges.append(Edge(s.loc, seq(s.body, s.loc), BRANCH_TRUE))
                edges.append(Edge(s.loc, follow, BRANCH_FALSE))
            elif isinstance(s, Return):
                edges.append(Edge(s.loc, EXIT, FALLTHROUGH))
            else:
                edges.append(Edge(s.loc, follow, FALLTHROUGH))
            return s.loc

        edges.append(Edge(f.entry_loc, seq(f.body, EXIT), FALLTHROUGH))
        edges.sort(key=lambda e: (e.src, e.kind != BRANCH_TRUE, e.dst))
        graphs[f.name] = FunctionCFG(f.name, f.entry_loc, frozenset(nodes), tuple(edges))
    return CFG(graphs)
