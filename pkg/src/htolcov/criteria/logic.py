"""Condition/decision criteria: CC, DCC, MCC and the MC/DC family.

Conditions are the leaves of a decision's ``&&``/``||``/``!`` structure,
identified by syntactic occurrence.  ``d[c <- b]`` is built by replacing that
occurrence in the decision tree.
"""
from __future__ import annotations

import itertools
from typing import List, Tuple

from ..errors import AnnotationError
from ..expr import FALSE, TRUE, Binary, Expr, Meta, and_, and_all, atomic_conditions, negate, \
    replace_at, to_source
from ..htol.ast import Guard, Label, Objective, conj
from ..minilang.program import LocatedProgram
from .base import CriterionId

MAX_MCC_CONDITIONS = 16

CC, DCC, MCC, GACC, CACC, RACC = (CriterionId.CC, CriterionId.DCC, CriterionId.MCC,
                                  CriterionId.GACC, CriterionId.CACC, CriterionId.RACC)


def active(d: Expr, path) -> Expr:
    """``d[c <- true] != d[c <- false]``: the condition at ``path`` determines ``d``."""
    return Binary("!=", replace_at(d, path, TRUE), replace_at(d, path, FALSE))


def gacc_labels(loc: int, d: Expr, path, c: Expr) -> Tuple[Label, Label]:
    a = active(d, path)
    return Label(loc, and_(c, a)), Label(loc, and_(negate(c), a))


def cacc_hyperlabel(loc: int, d: Expr, path, c: Expr):
    l3, l4 = gacc_labels(loc, d, path, c)
    body = conj(Label(l3.loc, l3.pred, (("r", d),)), Label(l4.loc, l4.pred, (("r'", d),)))
    return Guard(body, Binary("!=", Meta("r"), Meta("r'")))


def racc_hyperlabel(loc: int, d: Expr, conds: List[Expr], i: int):
    n = len(conds)
    first = tuple((f"c{j + 1}", c) for j, c in enumerate(conds))
    second = tuple((f"c{j + 1}'", c) for j, c in enumerate(conds))
    body = conj(Label(loc, d, first), Label(loc, negate(d), second))
    psi = and_all(Binary("!=" if j == i else "==", Meta(f"c{j + 1}"), Meta(f"c{j + 1}'"))
                  for j in range(n))
    return Guard(body, psi)


def _cc(loc, d, conds, crit, prefix) -> List[Objective]:
    out = []
    for j, (_, c) in enumerate(conds):
        src = to_source(c)
        out.append(Objective(f"{prefix}_{loc}_c{j + 1}t", Label(loc, c), crit, f"condition `{src}` true"))
        out.append(Objective(f"{prefix}_{loc}_c{j + 1}f", Label(loc, negate(c)), crit,
                             f"condition `{src}` false"))
    return out


def annotate_decision(loc: int, d: Expr, variant: CriterionId) -> List[Objective]:
    conds = atomic_conditions(d)
    n = len(conds)
    crit = str(variant)
    tag = variant.tag
    src = to_source(d)
    out: List[Objective] = []
    if variant is CC:
        out = _cc(loc, d, conds, crit, tag)
    elif variant is DCC:
        out = _cc(loc, d, conds, crit, tag)
        have = {(o.h.loc, o.h.pred) for o in out}
        for suffix, pred in (("t", d), ("f", negate(d))):
            if (loc, pred) not in have:
                out.append(Objective(f"{tag}_{loc}_d{suffix}", Label(loc, pred), crit,
                                     f"decision `{src}` {'true' if suffix == 't' else 'false'}"))
    elif variant is MCC:
        if n > MAX_MCC_CONDITIONS:
            raise AnnotationError(f"loc{loc}: MCC refused, {n} conditions "
                                  f"(more than {MAX_MCC_CONDITIONS})")
        # first condition varies fastest
        for k, signs in enumerate(itertools.product((True, False), repeat=n)):
            signs = signs[::-1]
            pred = and_all(c if s else negate(c) for (_, c), s in zip(conds, signs))
            vals = "".join("T" if s else "F" for s in signs)
            out.append(Objective(f"{tag}_{loc}_{k}", Label(loc, pred), crit,
                                 f"`{src}` with conditions {vals}"))
    elif variant in (GACC, CACC, RACC):
        for j, (path, c) in enumerate(conds):
            csrc = to_source(c)
            if variant is GACC:
                l3, l4 = gacc_labels(loc, d, path, c)
                out.append(Objective(f"{tag}_{loc}_c{j + 1}t", l3, crit, f"`{csrc}` true and active in `{src}`"))
                out.append(Objective(f"{tag}_{loc}_c{j + 1}f", l4, crit, f"`{csrc}` false and active in `{src}`"))
            elif variant is CACC:
                out.append(Objective(f"{tag}_{loc}_c{j + 1}", cacc_hyperlabel(loc, d, path, c), crit,
                                     f"`{csrc}` flips `{src}`"))
            else:
                out.append(Objective(f"{tag}_{loc}_c{j + 1}",
                                     racc_hyperlabel(loc, d, [c for _, c in conds], j), crit,
                                     f"`{csrc}` alone flips `{src}`"))
    else:
        raise AnnotationError(f"{variant} is not a logic criterion")
    return out


def annotate_logic(p: LocatedProgram, variant: CriterionId) -> List[Objective]:
    variant = CriterionId(variant)
    out: List[Objective] = []
    for loc, d in p.decisions():
        out.extend(annotate_decision(loc, d, variant))
    return out
