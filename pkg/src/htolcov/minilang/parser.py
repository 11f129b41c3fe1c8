"""MiniImp parser and type checker.

Locations are handed out in source order: every statement (including each
``if``/``while``, whose location is its condition) gets the next integer
starting at 1; function entry points are numbered after all statements.
"""
from __future__ import annotations

import re
from typing import Dict, List, Optional, Tuple

from ..errors import TypeErr
from ..expr import BOOL, INT, ArrayType, Expr, Type, Var, parse_expr, typecheck
from ..lexer import TokenStream, tokenize
from .ast import (Assign, Call, CallStmt, Decl, FunctionDef, If, Param, Return, Stmt,
                  While, stmt_kind)
from .program import LocatedProgram, LocationInfo, freeze

KEYWORDS = {"int", "bool", "void", "if", "else", "while", "return", "true", "false", "pc"}
_LOC_NAME = re.compile(r"loc\d+$")


def parse_program(source: str, entry: Optional[str] = None) -> LocatedProgram:
    """Parse and type-check MiniImp source text.

    ``entry`` names the function test data are fed to; it defaults to ``main``
    when present, otherwise the first function.
    """
    funcs = _Parser(source).program()
    return _Checker(funcs, source).check(entry)


class _Parser:
    def __init__(self, source: str):
        self.ts = TokenStream(tokenize(source))
        self.next_loc = 1

    def _loc(self) -> int:
        loc = self.next_loc
        self.next_loc += 1
        return loc

    def _name(self) -> Tuple[str, Tuple[int, int]]:
        t = self.ts.expect_ident()
        if t.value in KEYWORDS or "'" in t.value or _LOC_NAME.match(t.value):
            self.ts.fail(f"{t.value!r} cannot be used as a name", t)
        return t.value, (t.line, t.col)

    def program(self) -> List[FunctionDef]:
        raw = []
        while self.ts.tok.kind != "eof":
            raw.append(self.function())
        if not raw:
            self.ts.fail("empty program: expected a function definition")
        # entry locations come after every statement location
        funcs = []
        for f in raw:
            funcs.append(FunctionDef(f.name, f.ret, f.params, f.body, self._loc(), f.span))
        return funcs

    def function(self) -> FunctionDef:
        ts = self.ts
        t = ts.tok
        if not (ts.at("int") or ts.at("bool") or ts.at("void")):
            ts.fail(f"expected return type, found {t}")
        ret = ts.advance().value
        name, span = self._name()
        ts.expect("(")
        params: List[Param] = []
        if not ts.at(")"):
            while True:
                params.append(self.param())
                if not ts.accept(","):
                    break
        ts.expect(")")
        body = self.block()
        return FunctionDef(name, ret, tuple(params), body, 0, span)

    def param(self) -> Param:
        ts = self.ts
        if ts.at("bool"):
            ts.advance()
            return Param(self._name()[0], BOOL)
        if ts.at("int"):
            ts.advance()
            name = self._name()[0]
            if ts.accept("["):
                size = ts.expect_int()
                ts.expect("]")
                return Param(name, ArrayType(size))
            return Param(name, INT)
        ts.fail(f"expected parameter type, found {ts.tok}")

    def block(self) -> Tuple[Stmt, ...]:
        ts = self.ts
        ts.expect("{")
        stmts = []
        while not ts.at("}"):
            if ts.tok.kind == "eof":
                ts.fail("unterminated block")
            stmts.append(self.statement())
        ts.expect("}")
        return tuple(stmts)

    def statement(self) -> Stmt:
        ts = self.ts
        t = ts.tok
        span = (t.line, t.col)
        if ts.at("int") or ts.at("bool"):
            loc = self._loc()
            base = ts.advance().value
            name, _ = self._name()
            if base == "int" and ts.accept("["):
                size = ts.expect_int()
                ts.expect("]")
                ts.expect(";")
                return Decl(loc, name, ArrayType(size), None, span)
            rhs = None
            if ts.accept(":="):
                rhs = self.rhs()
            ts.expect(";")
            return Decl(loc, name, base, rhs, span)
        if ts.at("if"):
            return self.if_stmt()
        if ts.at("while"):
            loc = self._loc()
            ts.advance()
            ts.expect("(")
            cond = parse_expr(ts)
            ts.expect(")")
            body = self.block()
            ts.accept(";")
            return While(loc, cond, body, span)
        if ts.at("return"):
            loc = self._loc()
            ts.advance()
            value = None if ts.at(";") else parse_expr(ts)
            ts.expect(";")
            return Return(loc, value, span)
        if t.kind == "ident":
            if ts.peek().value == "(":
                loc = self._loc()
                call = self.call()
                ts.expect(";")
                return CallStmt(loc, call, span)
            loc = self._loc()
            name, _ = self._name()
            index = None
            if ts.accept("["):
                index = parse_expr(ts)
                ts.expect("]")
            ts.expect(":=")
            rhs = self.rhs()
            ts.expect(";")
            return Assign(loc, name, index, rhs, span)
        ts.fail(f"expected statement, found {t}")

    def if_stmt(self) -> If:
        ts = self.ts
        t = ts.expect("if")
        loc = self._loc()
        ts.expect("(")
        cond = parse_expr(ts)
        ts.expect(")")
        then = self.block()
        orelse: Tuple[Stmt, ...] = ()
        if ts.accept("else"):
            orelse = (self.if_stmt(),) if ts.at("if") else self.block()
        ts.accept(";")
        return If(loc, cond, then, orelse, (t.line, t.col))

    def rhs(self):
        ts = self.ts
        if ts.tok.kind == "ident" and ts.peek().value == "(" and ts.tok.value not in KEYWORDS:
            return self.call()
        return parse_expr(ts)

    def call(self) -> Call:
        ts = self.ts
        name = ts.expect_ident().value
        ts.expect("(")
        args = []
        if not ts.at(")"):
            while True:
                args.append(parse_expr(ts))
                if not ts.accept(","):
                    break
        ts.expect(")")
        return Call(name, tuple(args))


class _Checker:
    def __init__(self, funcs: List[FunctionDef], source: str):
        self.funcs = funcs
        self.source = source
        self.table: Dict[int, LocationInfo] = {}
        self.scopes: Dict[int, object] = {}
        self.sigs: Dict[str, FunctionDef] = {}

    def check(self, entry: Optional[str]) -> LocatedProgram:
        for f in self.funcs:
            if f.name in self.sigs:
                raise TypeErr(f"duplicate function {f.name!r}", *f.span)
            self.sigs[f.name] = f
        for f in self.funcs:
            self.function(f)
        if entry is None:
            entry = "main" if "main" in self.sigs else self.funcs[0].name
        if entry not in self.sigs:
            raise TypeErr(f"entry function {entry!r} is not defined")
        return LocatedProgram(tuple(self.funcs), entry, freeze(self.table),
                              freeze(self.scopes), self.source)

    def function(self, f: FunctionDef) -> None:
        scope: Dict[str, Type] = {}
        for p in f.params:
            if p.name in scope:
                raise TypeErr(f"duplicate parameter {p.name!r}", *f.span)
            scope[p.name] = p.type
        self.table[f.entry_loc] = LocationInfo(f.entry_loc, f.name, "entry", f.span, None)
        self.scopes[f.entry_loc] = freeze(scope)
        self.block(f, f.body, scope)

    def block(self, f: FunctionDef, body, outer: Dict[str, Type]) -> None:
        scope = dict(outer)
        for s in body:
            self.table[s.loc] = LocationInfo(s.loc, f.name, stmt_kind(s), s.span, s)
            self.scopes[s.loc] = freeze(scope)
            self.stmt(f, s, scope)

    def _expr(self, e: Expr, scope, want: Optional[Type], what: str, span) -> Type:
        def error(msg, node):
            pos = getattr(node, "pos", None) or span
            raise TypeErr(msg, *pos)

        t = typecheck(e, scope.get, error=error)
        if isinstance(t, ArrayType) and want is not None:
            raise TypeErr(f"{what}: array used as a value", *span)
        if want is not None and t != want:
            raise TypeErr(f"{what}: expected {want}, got {t}", *span)
        return t

    def _call(self, call: Call, scope, span) -> str:
        callee = self.sigs.get(call.func)
        if callee is None:
            raise TypeErr(f"call to undefined function {call.func!r}", *span)
        if len(call.args) != len(callee.params):
            raise TypeErr(f"{call.func} expects {len(callee.params)} arguments, got {len(call.args)}", *span)
        for a, p in zip(call.args, callee.params):
            if isinstance(p.type, ArrayType):
                if not isinstance(a, Var) or scope.get(a.name) != p.type:
                    raise TypeErr(f"argument {p.name!r} of {call.func} must be an {p.type} variable", *span)
            else:
                self._expr(a, scope, p.type, f"argument {p.name!r} of {call.func}", span)
        return callee.ret

    def _rhs(self, rhs, scope, want: Type, span) -> None:
        if isinstance(rhs, Call):
            ret = self._call(rhs, scope, span)
            if ret != want:
                raise TypeErr(f"{rhs.func} returns {ret}, expected {want}", *span)
        else:
            self._expr(rhs, scope, want, "assignment", span)

    def stmt(self, f: FunctionDef, s: Stmt, scope: Dict[str, Type]) -> None:
        span = s.span
        if isinstance(s, Decl):
            if s.name in scope:
                raise TypeErr(f"redeclaration of {s.name!r}", *span)
            if s.rhs is not None:
                self._rhs(s.rhs, scope, s.type, span)
            scope[s.name] = s.type
        elif isinstance(s, Assign):
            t = scope.get(s.target)
            if t is None:
                raise TypeErr(f"undeclared variable {s.target!r}", *span)
            if s.index is not None:
                if not isinstance(t, ArrayType):
                    raise TypeErr(f"{s.target!r} is not an array", *span)
                self._expr(s.index, scope, INT, "array index", span)
                t = INT
            elif isinstance(t, ArrayType):
                raise TypeErr(f"cannot assign whole array {s.target!r}", *span)
            self._rhs(s.rhs, scope, t, span)
        elif isinstance(s, If):
            self._expr(s.cond, scope, BOOL, "if condition", span)
            self.block(f, s.then, scope)
            self.block(f, s.orelse, scope)
        elif isinstance(s, While):
            self._expr(s.cond, scope, BOOL, "while condition", span)
            self.block(f, s.body, scope)
        elif isinstance(s, Return):
            if f.ret == "void":
                if s.value is not None:
                    raise TypeErr(f"void function {f.name!r} returns a value", *span)
            elif s.value is None:
                raise TypeErr(f"function {f.name!r} must return {f.ret}", *span)
            else:
                self._expr(s.value, scope, f.ret, "return value", span)
        elif isinstance(s, CallStmt):
            self._call(s.call, scope, span)


