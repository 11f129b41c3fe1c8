"""Annotation functions: program + criterion -> hyperlabel objectives."""
from __future__ import annotations

from typing import Iterable, List, Union

from ..errors import AnnotationError
from ..htol.ast import Objective
from ..minilang.program import LocatedProgram
from .base import AnnotatedProgram, CriterionId, validate
from .dataflow import annotate_dataflow
from .logic import MAX_MCC_CONDITIONS, annotate_decision, annotate_logic
from .mutation import OPERATORS, annotate_wm_prime, mutants
from .structural import annotate_bpc, annotate_fcc, annotate_structural, basis_paths

C = CriterionId
_STRUCTURAL = (C.FC, C.BBC, C.DC)
_LOGIC = (C.CC, C.DCC, C.MCC, C.GACC, C.CACC, C.RACC)


def objectives_for(p: LocatedProgram, c: CriterionId, array_cells: bool = False,
                   operators: Iterable[str] = OPERATORS) -> List[Objective]:
    if c in _STRUCTURAL:
        return annotate_structural(p, c)
    if c in _LOGIC:
        return annotate_logic(p, c)
    if c is C.FCC:
        return annotate_fcc(p)
    if c is C.BPC:
        return annotate_bpc(p)
    if c in (C.ALL_USES, C.ALL_DEFS):
        return annotate_dataflow(p, c, array_cells)
    if c is C.WM_PRIME:
        return annotate_wm_prime(p, operators)
    raise AnnotationError(f"unsupported criterion {c}")


def annotate(p: LocatedProgram, criteria: Union[str, CriterionId, Iterable], *,
             array_cells: bool = False, operators: Iterable[str] = OPERATORS) -> AnnotatedProgram:
    """Objectives of every requested criterion, in request order."""
    if isinstance(criteria, (str, CriterionId)):
        criteria = [criteria]
    cs = [c if isinstance(c, CriterionId) else CriterionId.parse(c) for c in criteria]
    objectives: List[Objective] = []
    for c in dict.fromkeys(cs):
        objectives.extend(objectives_for(p, c, array_cells, operators))
    validate(p, objectives)
    return AnnotatedProgram(p, objectives)


__all__ = [
    "AnnotatedProgram", "CriterionId", "MAX_MCC_CONDITIONS", "OPERATORS", "annotate",
    "annotate_bpc", "annotate_dataflow", "annotate_decision", "annotate_fcc", "annotate_logic",
    "annotate_structural", "annotate_wm_prime", "basis_paths", "mutants", "objectives_for",
    "validate",
]
