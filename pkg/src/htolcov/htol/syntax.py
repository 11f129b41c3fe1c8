"""Concrete HTL syntax: parser, resolver/type checker, and printer.

    # comment
    let l  = l(loc2, x == y && a < b){c1 <- x == y; c2 <- a < b}
    let l' = l(loc2, !(x == y && a < b)){c1' <- x == y; c2' <- a < b}
    h1 = guard(l . l') with (c1 != c1' && c2 == c2')
    h3 = l(loc1, true) + l(loc4, true)
    h9 = guard([ l(loc1, true){v1 <- i} ->(pc == loc2 => j != v1) l(loc3, true){v2 <- k} ])
         with (v1 == v2)

``.`` is conjunction and binds tighter than ``+`` (disjunction).  A guard's
predicate is an ordinary expression, so a guard followed by ``+`` must be
parenthesised (``+`` would read as addition).  The printer always
parenthesises nested guards.
"""
from __future__ import annotations

from typing import Dict, List, Optional, Set

from ..errors import HTLError
from ..expr import (BOOL, ArrayType, Binary, Unary, Expr, Index, LocLit, Meta, Type, Var, parse_expr,
                    to_source, typecheck, walk, TRUE)
from ..lexer import TokenStream, tokenize
from ..minilang.program import LocatedProgram
from .ast import Conj, Disj, Guard, Hyperlabel, Label, Objective, Sequence, labels_of
from .semantics import check_scoping, check_well_formed, visible_names


def parse_htl(text: str, program: LocatedProgram) -> List[Objective]:
    """Parse, resolve and check an HTL document against ``program``."""
    return _HTLParser(text, program).document()


def parse_hyperlabel(text: str, program: LocatedProgram) -> Hyperlabel:
    """Parse a single hyperlabel expression (no declarations)."""
    p = _HTLParser(text, program)
    h = p.hyper()
    if p.ts.tok.kind != "eof":
        p.ts.fail(f"unexpected {p.ts.tok}")
    p.finish(h, "<expr>")
    return h


class _HTLParser:
    def __init__(self, text: str, program: LocatedProgram):
        self.ts = TokenStream(tokenize(text), HTLError)
        self.p = program
        self.lets: Dict[str, Hyperlabel] = {}

    # ------------------------------------------------------------ declarations

    def document(self) -> List[Objective]:
        ts = self.ts
        objectives: List[Objective] = []
        ids: Set[str] = set()
        while ts.tok.kind != "eof":
            is_let = ts.accept("let")
            tok = ts.expect_ident()
            name = tok.value
            if name in ids or name in self.lets:
                ts.fail(f"{name!r} is declared twice", tok)
            ts.expect("=")
            h = self.hyper()
            ts.accept(";")
            self.finish(h, name, tok)
            if is_let:
                self.lets[name] = h
            else:
                ids.add(name)
                objectives.append(Objective(name, h))
        return objectives

    def finish(self, h: Hyperlabel, name: str, tok=None) -> None:
        problems = check_well_formed(h) + check_scoping(h)
        if problems:
            line, col = (tok.line, tok.col) if tok else (0, 0)
            raise HTLError(f"{name}: " + "; ".join(problems), line, col)
        meta_types(h, self.p)

    # ------------------------------------------------------------ hyperlabels

    def hyper(self) -> Hyperlabel:
        left = self.conj()
        while self.ts.accept("+"):
            left = Disj(left, self.conj())
        return left

    def conj(self) -> Hyperlabel:
        left = self.unary()
        while self.ts.accept("."):
            left = Conj(left, self.unary())
        return left

    def unary(self) -> Hyperlabel:
        ts = self.ts
        if ts.at("guard") and ts.peek().value == "(":
            ts.advance()
            ts.expect("(")
            body = self.hyper()
            ts.expect(")")
            ts.expect("with")
            psi = parse_expr(ts, implies=True)
            names = visible_names(body)
            psi = _resolve(psi, metas=names, allow_vars=False, ts=ts, what="guard")
            self._check_bool(psi, body, "guard")
            return Guard(body, psi)
        if ts.accept("("):
            h = self.hyper()
            ts.expect(")")
            return h
        if ts.at("["):
            return self.sequence()
        return self.bound()

    def sequence(self) -> Sequence:
        ts = self.ts
        ts.expect("[")
        elems = [self.bound(in_sequence=True)]
        preds: List[Expr] = []
        while ts.accept("->"):
            if ts.accept("("):
                tok = ts.tok
                phi = parse_expr(ts, implies=True, pc=True)
                ts.expect(")")
                bound = {n for lab in elems for n in lab.names}
                phi = _resolve(phi, metas=bound, allow_vars=True, ts=ts, what="path predicate")
                self._check_path_pred(phi, elems, tok)
            else:
                phi = TRUE
            preds.append(phi)
            elems.append(self.bound(in_sequence=True))
        ts.expect("]")
        if len(elems) < 2:
            ts.fail("a sequence needs at least two labels")
        return Sequence(tuple(elems), tuple(preds))

    def bound(self, in_sequence: bool = False) -> Hyperlabel:
        ts = self.ts
        tok = ts.tok
        if tok.kind != "ident":
            ts.fail(f"expected a label, found {tok}")
        if tok.value == "l" and ts.peek().value == "(":
            ts.advance()
            ts.expect("(")
            ltok = ts.expect_ident()
            loc = self._location(ltok)
            ts.expect(",")
            pred = parse_expr(ts)
            ts.expect(")")
            pred = self._program_expr(pred, loc, BOOL, "label predicate", ltok)
            base = Label(loc, pred)
        else:
            ts.advance()
            if tok.value not in self.lets:
                ts.fail(f"unknown name {tok.value!r}", tok)
            base = self.lets[tok.value]
            if not ts.at("{"):
                if in_sequence and not isinstance(base, Label):
                    ts.fail(f"{tok.value!r} is not an atomic label", tok)
                return base
            if not isinstance(base, Label) or base.bindings:
                ts.fail("bindings can only extend an atomic label without bindings", tok)
        if ts.accept("{"):
            bindings = []
            while not ts.at("}"):
                ntok = ts.expect_ident()
                ts.expect("<-")
                e = parse_expr(ts)
                e = self._program_expr(e, base.loc, None, f"binding {ntok.value}", ntok)
                bindings.append((ntok.value, e))
                if not ts.accept(";"):
                    break
            ts.expect("}")
            base = Label(base.loc, base.pred, tuple(bindings))
        return base

    # ------------------------------------------------------------ checks

    def _location(self, tok) -> int:
        v = tok.value
        if not (v.startswith("loc") and v[3:].isdigit()):
            self.ts.fail(f"expected a location like loc3, found {v!r}", tok)
        loc = int(v[3:])
        if loc not in self.p.location_table:
            self.ts.fail(f"unknown location {v}", tok)
        return loc

    def _program_expr(self, e: Expr, loc: int, want: Optional[Type], what: str, tok) -> Expr:
        scope = self.p.scope(loc)

        def error(msg, node):
            raise HTLError(f"{what} at loc{loc}: {msg}", tok.line, tok.col)

        t = typecheck(e, scope.get, error=error)
        if isinstance(t, ArrayType):
            error("arrays cannot be compared or bound", e)
        if want is not None and t != want:
            error(f"expected {want}, got {t}", e)
        return e

    def _check_bool(self, psi: Expr, body: Hyperlabel, what: str) -> None:
        types = meta_types(body, self.p)

        def error(msg, node):
            self.ts.fail(f"{what}: {msg}")

        if typecheck(psi, lambda n: None, types.get, error=error) != BOOL:
            self.ts.fail(f"{what} must be boolean")

    def _check_path_pred(self, phi: Expr, elems: List[Label], tok) -> None:
        metas: Dict[str, Type] = {}
        for lab in elems:
            scope = self.p.scope(lab.loc)
            for n, e in lab.bindings:
                metas[n] = typecheck(e, scope.get)
        prog = self.p.all_variables()

        def var_type(name: str) -> Optional[Type]:
            types = prog.get(name)
            if not types:
                return None
            if len(types) > 1:
                raise HTLError(f"path predicate: {name!r} has several types in the program",
                               tok.line, tok.col)
            return next(iter(types))

        def error(msg, node):
            raise HTLError(f"path predicate: {msg}", tok.line, tok.col)

        for n in walk(phi):
            if isinstance(n, LocLit) and n.loc not in self.p.location_table:
                error(f"unknown location loc{n.loc}", n)
        if typecheck(phi, var_type, metas.get, error=error) != BOOL:
            error("must be boolean", phi)


def _resolve(e: Expr, metas, allow_vars: bool, ts: TokenStream, what: str) -> Expr:
    """Turn identifiers into metavariables (if bound) or program variables."""

    def go(n: Expr) -> Expr:
        if isinstance(n, Var):
            if n.name in metas:
                return Meta(n.name)
            if not allow_vars:
                ts.fail(f"{what} reads {n.name!r}, which is not a visible name")
            if "'" in n.name:
                ts.fail(f"{what} reads unbound metavariable {n.name!r}")
            return n
        if isinstance(n, Index):
            if not allow_vars:
                ts.fail(f"{what} cannot read program variable {n.name!r}")
            return Index(n.name, go(n.index), pos=n.pos)
        if isinstance(n, Unary):
            return Unary(n.op, go(n.operand))
        if isinstance(n, Binary):
            return Binary(n.op, go(n.left), go(n.right))
        return n

    return go(e)


def meta_types(h: Hyperlabel, p: LocatedProgram) -> Dict[str, Type]:
    """Type of every metavariable, from its binding expressions."""
    out: Dict[str, Type] = {}
    for lab in labels_of(h):
        scope = p.scope(lab.loc)
        for name, e in lab.bindings:
            t = typecheck(e, scope.get)
            if out.setdefault(name, t) != t:
                raise HTLError(f"metavariable {name!r} bound with types {out[name]} and {t}")
    return out


# ---------------------------------------------------------------- printing


def print_hyperlabel(h: Hyperlabel) -> str:
    return _print(h, top=True)


def _label(l: Label) -> str:
    text = f"l(loc{l.loc}, {to_source(l.pred)})"
    if l.bindings:
        text += "{" + "; ".join(f"{n} <- {to_source(e)}" for n, e in l.bindings) + "}"
    return text


def _print(h: Hyperlabel, top: bool = False, ctx: str = "") -> str:
    if isinstance(h, Label):
        return _label(h)
    if isinstance(h, Sequence):
        parts = [_label(h.elems[0])]
        for phi, lab in zip(h.path_preds, h.elems[1:]):
            arrow = "->" if phi == TRUE else f"->({to_source(phi)})"
            parts.append(f"{arrow} {_label(lab)}")
        return "[ " + " ".join(parts) + " ]"
    if isinstance(h, Guard):
        text = f"guard({_print(h.body, top=True)}) with ({to_source(h.psi)})"
        return text if top else f"({text})"
    if isinstance(h, Conj):
        text = f"{_print(h.left, ctx='.L')} . {_print(h.right, ctx='.R')}"
        return text if top or ctx == ".L" else f"({text})"
    if isinstance(h, Disj):
        text = f"{_print(h.left, ctx='+L')} + {_print(h.right, ctx='+R')}"
        return text if top or ctx == "+L" else f"({text})"
    raise TypeError(f"not a hyperlabel: {h!r}")


def print_htl(objectives: List[Objective]) -> str:
    lines = []
    for o in objectives:
        if o.criterion or o.origin:
            lines.append(f"# {o.criterion}: {o.origin}".rstrip(": "))
        lines.append(f"{o.id} = {print_hyperlabel(o.h)}")
    return "\n".join(lines) + "\n"
