"""Function, block, decision, call and basis-path criteria."""
from __future__ import annotations

from typing import Dict, List, Tuple

from ..errors import AnnotationError
from ..expr import Binary, Expr, LocLit, Pc, and_all, negate, to_source
from ..htol.ast import Label, Objective, Sequence, disj
from ..minilang.callgraph import build_callgraph
from ..minilang.cfg import BRANCH_TRUE, EXIT, Edge, FunctionCFG, build_cfg
from ..minilang.program import LocatedProgram
from .base import CriterionId

FC, BBC, DC, FCC, BPC = (CriterionId.FC, CriterionId.BBC, CriterionId.DC,
                         CriterionId.FCC, CriterionId.BPC)


def annotate_structural(p: LocatedProgram, variant: CriterionId) -> List[Objective]:
    variant = CriterionId(variant)
    out: List[Objective] = []
    if variant is FC:
        for f in p.functions:
            out.append(Objective(f"fc_{f.name}", Label(f.entry_loc), str(FC),
                                 f"entry of {f.name}"))
    elif variant is BBC:
        cfg = build_cfg(p)
        for f in p.functions:
            for block in cfg[f.name].basic_blocks():
                lead = block[0]
                out.append(Objective(f"bbc_{lead}", Label(lead), str(BBC),
                                     f"block loc{lead}..loc{block[-1]} in {f.name}"))
    elif variant is DC:
        for loc, d in p.decisions():
            src = to_source(d)
            out.append(Objective(f"dc_{loc}_t", Label(loc, d), str(DC), f"decision `{src}` true"))
            out.append(Objective(f"dc_{loc}_f", Label(loc, negate(d)), str(DC),
                                 f"decision `{src}` false"))
    else:
        raise AnnotationError(f"{variant} is not a structural criterion")
    return out


def annotate_fcc(p: LocatedProgram) -> List[Objective]:
    """One objective per call-graph edge: any of its call sites."""
    cg = build_callgraph(p)
    out = []
    for (f, g), sites in sorted(cg.edges.items(), key=lambda kv: kv[1][0]):
        h = disj(*(Label(loc) for loc in sites))
        sites_txt = ", ".join(f"loc{l}" for l in sites)
        out.append(Objective(f"fcc_{f}_{g}", h, str(FCC), f"call {f} -> {g} at {sites_txt}"))
    return out


# ---------------------------------------------------------------- basis paths

Path = List[Tuple[int, Edge]]


def _walk(g: FunctionCFG, start: int, visits: Dict[int, int], path: Path,
          first: Edge = None, bound: int = 0) -> Path:
    # default rule: a decision takes its true edge on its first visit, false after
    n = start
    while n != EXIT:
        edges = g.succ[n]
        if first is not None:
            e, first = first, None
        elif len(edges) == 1:
            e = edges[0]
        else:
            e = edges[0] if visits.get(n, 0) == 0 else edges[1]
        if len(edges) > 1:
            visits[n] = visits.get(n, 0) + 1
        path.append((n, e))
        if len(path) > bound:
            raise AnnotationError(f"{g.name}: basis path exceeds {bound} steps")
        n = e.dst
    return path


def basis_paths(g: FunctionCFG) -> List[Path]:
    """Baseline method: start from the default path, then flip each decision
    at its first occurrence on some path already in the basis."""
    if not g.is_reducible():
        raise AnnotationError(f"{g.name}: irreducible control flow, no basis paths")
    bound = len(g.nodes) + 2 * len(g.back_edges()) + 1
    paths = [_walk(g, g.entry, {}, [], bound=bound)]
    done = set()
    changed = True
    while changed:
        changed = False
        for d in g.branch_nodes:
            if d in done:
                continue
            for path in paths:
                idx = next((i for i, (n, _) in enumerate(path) if n == d), None)
                if idx is None:
                    continue
                taken = path[idx][1]
                other = next(e for e in g.succ[d] if e != taken)
                prefix = path[:idx]
                visits: Dict[int, int] = {}
                for n, _ in prefix:
                    if len(g.succ[n]) > 1:
                        visits[n] = visits.get(n, 0) + 1
                new = _walk(g, d, visits, list(prefix), first=other, bound=bound)
                if new not in paths:
                    paths.append(new)
                done.add(d)
                changed = True
                break
    return paths


def _no_decision(decisions) -> Expr:
    return and_all(Binary("!=", Pc(), LocLit(d)) for d in decisions)


def encode_path(p: LocatedProgram, g: FunctionCFG, path: Path):
    decisions = g.branch_nodes
    elems = [Label(g.entry)]
    for n, e in path:
        if n in decisions:
            cond = p.stmt(n).cond
            elems.append(Label(n, cond if e.kind == BRANCH_TRUE else negate(cond)))
    last = path[-1][0]
    if last not in decisions and last != g.entry:
        elems.append(Label(last))
    if len(elems) == 1:
        return elems[0]
    phi = _no_decision(decisions)
    return Sequence(tuple(elems), (phi,) * (len(elems) - 1))


def annotate_bpc(p: LocatedProgram) -> List[Objective]:
    cfg = build_cfg(p)
    out = []
    for f in p.functions:
        g = cfg[f.name]
        for i, path in enumerate(basis_paths(g)):
            nodes = " ".join(f"loc{n}" for n, _ in path)
            out.append(Objective(f"bpc_{f.name}_{i}", encode_path(p, g, path), str(BPC),
                                 f"{f.name} path {nodes}"))
    return out


__all__ = ["annotate_bpc", "annotate_fcc", "annotate_structural", "basis_paths", "encode_path"]
