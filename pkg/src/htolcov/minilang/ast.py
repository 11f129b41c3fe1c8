"""MiniImp syntax tree.  Every statement carries its LocationId."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple, Union

from ..expr import Expr, Type

Span = Tuple[int, int]


@dataclass(frozen=True)
class Call:
    func: str
    args: Tuple[Expr, ...]


Rhs = Union[Expr, Call, None]


@dataclass(frozen=True)
class Stmt:
    pass


@dataclass(frozen=True)
class Decl(Stmt):
    loc: int
    name: str
    type: Type
    rhs: Rhs
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Assign(Stmt):
    loc: int
    target: str
    index: Optional[Expr]
    rhs: Rhs
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class If(Stmt):
    loc: int
    cond: Expr
    then: Tuple[Stmt, ...]
    orelse: Tuple[Stmt, ...]
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class While(Stmt):
    loc: int
    cond: Expr
    body: Tuple[Stmt, ...]
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Return(Stmt):
    loc: int
    value: Optional[Expr]
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class CallStmt(Stmt):
    loc: int
    call: Call
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Param:
    name: str
    type: Type


@dataclass(frozen=True)
class FunctionDef:
    name: str
    ret: str  # "int" | "bool" | "void"
    params: Tuple[Param, ...]
    body: Tuple[Stmt, ...]
    entry_loc: int
    span: Span = field(default=(0, 0), compare=False, repr=False)


def iter_stmts(body) -> Iterator[Stmt]:
    """Pre-order traversal, i.e. LocationId order within a function."""
    for s in body:
        yield s
        if isinstance(s, If):
            yield from iter_stmts(s.then)
            yield from iter_stmts(s.orelse)
        elif isinstance(s, While):
            yield from iter_stmts(s.body)


def stmt_kind(s: Stmt) -> str:
    return {Decl: "decl", Assign: "assign", If: "if", While: "while",
            Return: "return", CallStmt: "call"}[type(s)]


def rhs_call(s: Stmt) -> Optional[Call]:
    if isinstance(s, CallStmt):
        return s.call
    if isinstance(s, (Decl, Assign)) and isinstance(s.rhs, Call):
        return s.rhs
    return None


def stmt_exprs(s: Stmt) -> List[Expr]:
    """Expressions evaluated when the statement's location executes."""
    out: List[Expr] = []
    if isinstance(s, (Decl, Assign)):
        if isinstance(s, Assign) and s.index is not None:
            out.append(s.index)
        if isinstance(s.rhs, Call):
            out.extend(s.rhs.args)
        elif s.rhs is not None:
            out.append(s.rhs)
    elif isinstance(s, (If, While)):
        out.append(s.cond)
    elif isinstance(s, Return):
        if s.value is not None:
            out.append(s.value)
    elif isinstance(s, CallStmt):
        out.extend(s.call.args)
    return out
