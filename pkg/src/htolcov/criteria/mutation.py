"""Side-effect-free weak mutation: one label per (site, mutant) asserting
that the mutated subexpression differs from the original where it is
evaluated."""
from __future__ import annotations

from typing import Iterable, Iterator, List, Tuple

from ..errors import AnnotationError
from ..expr import INT, Binary, Expr, IntLit, Unary, subexpressions, to_source
from ..htol.ast import Label, Objective
from ..minilang.ast import stmt_exprs
from ..minilang.program import LocatedProgram
from .base import CriterionId, expr_type

OPERATORS = ("AOR", "ROR", "COR", "ABS")

_AOR = {"+": "-", "-": "+", "*": "/", "/": "*"}
_RELATIONAL = ("<", "<=", ">", ">=", "==", "!=")
_COR = {"&&": "||", "||": "&&"}


def mutants(e: Expr, scope, operators: Iterable[str] = OPERATORS) -> Iterator[Tuple[str, Expr]]:
    """Mutations of the top of ``e`` (not of its subterms)."""
    ops = set(operators)
    if isinstance(e, Binary):
        if "AOR" in ops and e.op in _AOR:
            yield "AOR", Binary(_AOR[e.op], e.left, e.right)
        if "ROR" in ops and e.op in _RELATIONAL:
            if expr_type(e.left, scope) == INT:
                peers = [o for o in _RELATIONAL if o != e.op]
            else:
                peers = ["!=" if e.op == "==" else "=="]
            for o in peers:
                yield "ROR", Binary(o, e.left, e.right)
        if "COR" in ops and e.op in _COR:
            yield "COR", Binary(_COR[e.op], e.left, e.right)
    if "ABS" in ops and not isinstance(e, IntLit) and expr_type(e, scope) == INT:
        yield "ABS", Unary("-", e)


def annotate_wm_prime(p: LocatedProgram, operators: Iterable[str] = OPERATORS) -> List[Objective]:
    operators = tuple(operators)
    unknown = set(operators) - set(OPERATORS)
    if unknown:
        raise AnnotationError(f"unknown mutation operator(s): {', '.join(sorted(unknown))}")
    crit = str(CriterionId.WM_PRIME)
    out: List[Objective] = []
    for loc in p.statement_locations:
        scope = p.scope(loc)
        seen = set()
        k = 0
        for top in stmt_exprs(p.stmt(loc)):
            for _, e in subexpressions(top):
                for op, m in mutants(e, scope, operators):
                    pred = Binary("!=", e, m)
                    if m == e or pred in seen:
                        continue
                    seen.add(pred)
                    out.append(Objective(f"wmp_{loc}_{k}", Label(loc, pred), crit,
                                         f"{op}: `{to_source(e)}` -> `{to_source(m)}`"))
                    k += 1
    return out
