"""LocatedProgram: a checked MiniImp program with its location table."""
from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, List, Mapping, Optional, Tuple

from ..expr import Expr, Type
from .ast import FunctionDef, If, Stmt, While, iter_stmts


@dataclass(frozen=True)
class LocationInfo:
    loc: int
    function: str
    kind: str  # entry | decl | assign | if | while | return | call
    span: Tuple[int, int]
    node: Optional[Stmt] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class LocatedProgram:
    functions: Tuple[FunctionDef, ...]
    entry: str
    location_table: Mapping[int, LocationInfo] = field(compare=False, repr=False)
    scopes: Mapping[int, Mapping[str, Type]] = field(compare=False, repr=False)
    source: str = field(default="", compare=False, repr=False)

    @property
    def locations(self) -> List[int]:
        return sorted(self.location_table)

    @property
    def statement_locations(self) -> List[int]:
        return [l for l in self.locations if self.location_table[l].kind != "entry"]

    def function(self, name: str) -> FunctionDef:
        for f in self.functions:
            if f.name == name:
                return f
        raise KeyError(name)

    @property
    def entry_function(self) -> FunctionDef:
        return self.function(self.entry)

    def scope(self, loc: int) -> Mapping[str, Type]:
        """Variables readable in the state recorded when ``loc`` is reached."""
        return self.scopes[loc]

    def kind(self, loc: int) -> str:
        return self.location_table[loc].kind

    def stmt(self, loc: int) -> Optional[Stmt]:
        return self.location_table[loc].node

    def function_of(self, loc: int) -> str:
        return self.location_table[loc].function

    def decisions(self) -> List[Tuple[int, Expr]]:
        """(location, condition) of every if/while, in location order."""
        out = []
        for f in self.functions:
            for s in iter_stmts(f.body):
                if isinstance(s, (If, While)):
                    out.append((s.loc, s.cond))
        return sorted(out, key=lambda x: x[0])

    def function_locations(self, name: str) -> List[int]:
        return [l for l in self.locations if self.location_table[l].function == name]

    def all_variables(self) -> Dict[str, set]:
        """Every program variable name and the set of types it is declared with."""
        out: Dict[str, set] = {}
        for scope in self.scopes.values():
            for n, t in scope.items():
                out.setdefault(n, set()).add(t)
        return out


def freeze(d: Dict) -> Mapping:
    return MappingProxyType(dict(d))
