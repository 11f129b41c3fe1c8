"""Criterion identifiers and the annotated-program container."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Tuple

from ..errors import AnnotationError, WellFormednessError
from ..expr import BOOL, INT, Binary, BoolLit, Expr, Index, IntLit, Type, Unary, Var
from ..htol.ast import Hyperlabel, Objective, labels_of
from ..htol.semantics import check_well_formed
from ..minilang.program import LocatedProgram


class CriterionId(str, Enum):
    FC = "FC"
    BBC = "BBC"
    DC = "DC"
    CC = "CC"
    DCC = "DCC"
    MCC = "MCC"
    GACC = "GACC"
    WM_PRIME = "WM'"
    CACC = "CACC"
    RACC = "RACC"
    FCC = "FCC"
    BPC = "BPC"
    ALL_DEFS = "ALL_DEFS"
    ALL_USES = "ALL_USES"

    def __str__(self) -> str:
        return self.value

    @property
    def tag(self) -> str:
        """Identifier-safe short name, used as objective id prefix."""
        return "wmp" if self is CriterionId.WM_PRIME else self.value.lower().replace("_", "")

    @classmethod
    def parse(cls, name: str) -> "CriterionId":
        key = name.strip().upper().replace("-", "_").replace("′", "'")
        if key in ("WMP", "WM_PRIME", "WM"):
            key = "WM'"
        for c in cls:
            if c.value == key:
                return c
        known = ", ".join(c.value for c in cls)
        raise AnnotationError(f"unknown criterion {name!r} (known: {known})")

    @classmethod
    def parse_list(cls, text: str) -> List["CriterionId"]:
        out: List[CriterionId] = []
        for part in text.split(","):
            if part.strip():
                c = cls.parse(part)
                if c not in out:
                    out.append(c)
        if not out:
            raise AnnotationError("empty criterion list")
        return out


@dataclass
class AnnotatedProgram:
    program: LocatedProgram
    objectives: List[Objective] = field(default_factory=list)

    @property
    def hyperlabels(self) -> List[Hyperlabel]:
        return [o.h for o in self.objectives]

    @property
    def provenance(self) -> Dict[str, Tuple[str, str]]:
        return {o.id: (o.criterion, o.origin) for o in self.objectives}

    def by_criterion(self, c) -> List[Objective]:
        return [o for o in self.objectives if o.criterion == str(c)]

    def __len__(self) -> int:
        return len(self.objectives)


def validate(p: LocatedProgram, objectives: Iterable[Objective]) -> None:
    """Every objective must be well-formed, uniquely named and location-valid."""
    seen = set()
    for o in objectives:
        if o.id in seen:
            raise AnnotationError(f"duplicate objective id {o.id!r}")
        seen.add(o.id)
        bad = check_well_formed(o.h)
        if bad:
            raise WellFormednessError(o.id, bad)
        for lab in labels_of(o.h):
            if lab.loc not in p.location_table:
                raise AnnotationError(f"{o.id}: unknown location loc{lab.loc}")


def fresh_name(base: str, taken) -> str:
    """``base`` unless it is a program variable name; then add underscores."""
    name = base
    while name in taken:
        name += "_"
    return name


def expr_type(e: Expr, scope) -> Type:
    """Type of a well-typed expression, read off its top constructor."""
    if isinstance(e, IntLit):
        return INT
    if isinstance(e, BoolLit):
        return BOOL
    if isinstance(e, Var):
        return scope[e.name]
    if isinstance(e, Index):
        return INT
    if isinstance(e, Unary):
        return INT if e.op == "-" else BOOL
    if isinstance(e, Binary):
        return INT if e.op in ("+", "-", "*", "/", "%") else BOOL
    raise TypeError(f"not a program expression: {e!r}")
