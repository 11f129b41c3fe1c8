"""Canonical MiniImp pretty-printer (``parse(print(p))`` reproduces ``p``)."""
from __future__ import annotations

from typing import List

from ..expr import ArrayType, to_source
from .ast import Assign, Call, CallStmt, Decl, FunctionDef, If, Return, While
from .program import LocatedProgram


def _call(c: Call) -> str:
    return f"{c.func}({', '.join(to_source(a) for a in c.args)})"


def _rhs(r) -> str:
    return _call(r) if isinstance(r, Call) else to_source(r)


def _stmts(body, depth: int, out: List[str], comments: bool) -> None:
    pad = "    " * depth
    for s in body:
        note = f"  // loc{s.loc}" if comments else ""
        if isinstance(s, Decl):
            if isinstance(s.type, ArrayType):
                out.append(f"{pad}int {s.name}[{s.type.size}];{note}")
            elif s.rhs is None:
                out.append(f"{pad}{s.type} {s.name};{note}")
            else:
                out.append(f"{pad}{s.type} {s.name} := {_rhs(s.rhs)};{note}")
        elif isinstance(s, Assign):
            target = s.target if s.index is None else f"{s.target}[{to_source(s.index)}]"
            out.append(f"{pad}{target} := {_rhs(s.rhs)};{note}")
        elif isinstance(s, If):
            out.append(f"{pad}if ({to_source(s.cond)}) {{{note}")
            _stmts(s.then, depth + 1, out, comments)
            if s.orelse:
                out.append(f"{pad}}} else {{")
                _stmts(s.orelse, depth + 1, out, comments)
            out.append(f"{pad}}}")
        elif isinstance(s, While):
            out.append(f"{pad}while ({to_source(s.cond)}) {{{note}")
            _stmts(s.body, depth + 1, out, comments)
            out.append(f"{pad}}}")
        elif isinstance(s, Return):
            value = "" if s.value is None else " " + to_source(s.value)
            out.append(f"{pad}return{value};{note}")
        elif isinstance(s, CallStmt):
            out.append(f"{pad}{_call(s.call)};{note}")


def print_function(f: FunctionDef, comments: bool = False) -> str:
    params = []
    for p in f.params:
        if isinstance(p.type, ArrayType):
            params.append(f"int {p.name}[{p.type.size}]")
        else:
            params.append(f"{p.type} {p.name}")
    head = f"{f.ret} {f.name}({', '.join(params)}) {{"
    if comments:
        head += f"  // loc{f.entry_loc} (entry)"
    out = [head]
    _stmts(f.body, 1, out, comments)
    out.append("}")
    return "\n".join(out)


def print_program(p: LocatedProgram, comments: bool = False) -> str:
    """Source text; ``comments`` appends ``// locN`` markers to each line."""
    return "\n\n".join(print_function(f, comments) for f in p.functions) + "\n"
