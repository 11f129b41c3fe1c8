"""Pure expressions shared by MiniImp programs and hyperlabel predicates.

One AST serves label predicates, binding expressions, guards and path
predicates.  Expressions are evaluated two ways: ``evaluate`` walks the tree
(used by the reference oracle), ``compile_expr`` turns it into a Python
closure (used by the interpreter and the harvesting monitors).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Tuple, Union

from .lexer import TokenStream

# ---------------------------------------------------------------- types


@dataclass(frozen=True)
class ArrayType:
    size: int

    def __str__(self) -> str:
        return f"int[{self.size}]"


INT = "int"
BOOL = "bool"
Type = Union[str, ArrayType]

Value = Union[int, bool, Tuple[int, ...]]


class Fault(Exception):
    """Runtime error raised while evaluating MiniImp code or predicates."""

    def __init__(self, kind: str):
        super().__init__(kind)
        self.kind = kind


# ---------------------------------------------------------------- AST


@dataclass(frozen=True)
class Expr:
    pass


@dataclass(frozen=True)
class IntLit(Expr):
    value: int


@dataclass(frozen=True)
class BoolLit(Expr):
    value: bool


@dataclass(frozen=True)
class Var(Expr):
    """Program variable (read from the execution state)."""

    name: str
    pos: Optional[Tuple[int, int]] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Meta(Expr):
    """Metavariable (read from a hyperlabel environment)."""

    name: str


@dataclass(frozen=True)
class Pc(Expr):
    """Current program location, only meaningful in path predicates."""


@dataclass(frozen=True)
class LocLit(Expr):
    loc: int


@dataclass(frozen=True)
class Unary(Expr):
    op: str  # "!" | "-"
    operand: Expr


@dataclass(frozen=True)
class Binary(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Index(Expr):
    name: str
    index: Expr
    pos: Optional[Tuple[int, int]] = field(default=None, compare=False, repr=False)


TRUE = BoolLit(True)
FALSE = BoolLit(False)

ARITH = ("+", "-", "*", "/", "%")
RELATIONAL = ("<", "<=", ">", ">=")
EQUALITY = ("==", "!=")
LOGICAL = ("&&", "||", "=>")

_PREC = {
    "=>": 1, "||": 2, "&&": 3, "==": 4, "!=": 4,
    "<": 5, "<=": 5, ">": 5, ">=": 5,
    "+": 6, "-": 6, "*": 7, "/": 7, "%": 7,
}
_UNARY_PREC = 8
_NEGATED = {"<": ">=", ">=": "<", ">": "<=", "<=": ">", "==": "!=", "!=": "=="}


def children(e: Expr) -> Tuple[Expr, ...]:
    if isinstance(e, Unary):
        return (e.operand,)
    if isinstance(e, Binary):
        return (e.left, e.right)
    if isinstance(e, Index):
        return (e.index,)
    return ()


def walk(e: Expr) -> Iterator[Expr]:
    yield e
    for c in children(e):
        yield from walk(c)


def program_vars(e: Expr) -> set:
    out = set()
    for n in walk(e):
        if isinstance(n, (Var, Index)):
            out.add(n.name)
    return out


def meta_vars(e: Expr) -> set:
    return {n.name for n in walk(e) if isinstance(n, Meta)}


def uses_pc(e: Expr) -> bool:
    return any(isinstance(n, Pc) for n in walk(e))


# ---------------------------------------------------------------- helpers


def and_(a: Expr, b: Expr) -> Expr:
    """Conjunction with ``true`` as identity (no other simplification)."""
    if a == TRUE:
        return b
    if b == TRUE:
        return a
    return Binary("&&", a, b)


def and_all(items) -> Expr:
    out: Expr = TRUE
    for it in items:
        out = and_(out, it)
    return out


def or_all(items) -> Expr:
    items = list(items)
    if not items:
        return FALSE
    out = items[0]
    for it in items[1:]:
        out = Binary("||", out, it)
    return out


def conjuncts(e: Expr) -> List[Expr]:
    if isinstance(e, Binary) and e.op == "&&":
        return conjuncts(e.left) + conjuncts(e.right)
    if e == TRUE:
        return []
    return [e]


def negate(e: Expr) -> Expr:
    """Logical negation, written the way a human would (``x!=y`` for ``x==y``)."""
    if isinstance(e, Binary) and e.op in _NEGATED:
        return Binary(_NEGATED[e.op], e.left, e.right)
    if isinstance(e, Unary) and e.op == "!":
        return e.operand
    if isinstance(e, BoolLit):
        return BoolLit(not e.value)
    return Unary("!", e)


Path = Tuple[int, ...]


def atomic_conditions(decision: Expr) -> List[Tuple[Path, Expr]]:
    """Leaves of the ``&&``/``||``/``!`` structure, by syntactic occurrence."""
    out: List[Tuple[Path, Expr]] = []

    def visit(e: Expr, path: Path) -> None:
        if isinstance(e, Binary) and e.op in ("&&", "||"):
            visit(e.left, path + (0,))
            visit(e.right, path + (1,))
        elif isinstance(e, Unary) and e.op == "!":
            visit(e.operand, path + (0,))
        else:
            out.append((path, e))

    visit(decision, ())
    return out


def replace_at(e: Expr, path: Path, new: Expr) -> Expr:
    if not path:
        return new
    head, rest = path[0], path[1:]
    if isinstance(e, Unary):
        return Unary(e.op, replace_at(e.operand, rest, new))
    if isinstance(e, Binary):
        if head == 0:
            return Binary(e.op, replace_at(e.left, rest, new), e.right)
        return Binary(e.op, e.left, replace_at(e.right, rest, new))
    if isinstance(e, Index):
        return Index(e.name, replace_at(e.index, rest, new))
    raise ValueError(f"bad path {path} for {e!r}")


def subexpressions(e: Expr) -> Iterator[Tuple[Path, Expr]]:
    def visit(n: Expr, path: Path):
        yield path, n
        for i, c in enumerate(children(n)):
            yield from visit(c, path + (i,))

    yield from visit(e, ())


# ---------------------------------------------------------------- printing


def to_source(e: Expr) -> str:
    return _src(e, 0)


def _src(e: Expr, ctx: int) -> str:
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, (Var, Meta)):
        return e.name
    if isinstance(e, Pc):
        return "pc"
    if isinstance(e, LocLit):
        return f"loc{e.loc}"
    if isinstance(e, Index):
        return f"{e.name}[{_src(e.index, 0)}]"
    if isinstance(e, Unary):
        inner = _src(e.operand, _UNARY_PREC)
        if e.op == "-" and inner.startswith("-"):
            inner = f"({inner})"
        text = f"{e.op}{inner}"
        return f"({text})" if ctx > _UNARY_PREC else text
    if isinstance(e, Binary):
        p = _PREC[e.op]
        if e.op == "=>":
            left, right = _src(e.left, p + 1), _src(e.right, p)
        else:
            left, right = _src(e.left, p), _src(e.right, p + 1)
        text = f"{left} {e.op} {right}"
        return f"({text})" if p < ctx else text
    raise TypeError(f"not an expression: {e!r}")


# ---------------------------------------------------------------- parsing


def parse_expr(ts: TokenStream, *, implies: bool = False, pc: bool = False) -> Expr:
    """Precedence-climbing parser; ``implies``/``pc`` enable HTL-only forms."""
    return _ExprParser(ts, implies, pc).parse(0)


class _ExprParser:
    def __init__(self, ts: TokenStream, implies: bool, pc: bool):
        self.ts = ts
        self.implies = implies
        self.pc = pc

    def _binop(self) -> Optional[str]:
        t = self.ts.tok
        if t.kind != "op":
            return None
        if t.value == "<-":
            # `a<-1` inside an expression means `a < -1`
            self.ts.split_compound("<", "-")
            return "<"
        if t.value == "=>" and not self.implies:
            return None
        return t.value if t.value in _PREC else None

    def parse(self, min_prec: int) -> Expr:
        left = self.unary()
        while True:
            op = self._binop()
            if op is None or _PREC[op] < min_prec:
                break
            p = _PREC[op]
            self.ts.advance()
            # `=>` is right-associative, everything else left-associative
            right = self.parse(p if op == "=>" else p + 1)
            left = Binary(op, left, right)
        return left

    def unary(self) -> Expr:
        ts = self.ts
        if ts.at("!") or ts.at("-"):
            op = ts.advance().value
            operand = self.unary()
            return Unary(op, operand)
        return self.primary()

    def primary(self) -> Expr:
        ts = self.ts
        t = ts.tok
        if t.kind == "int":
            ts.advance()
            return IntLit(int(t.value))
        if t.kind == "ident":
            ts.advance()
            if t.value == "true":
                return TRUE
            if t.value == "false":
                return FALSE
            if self.pc and t.value == "pc":
                return Pc()
            if self.pc and t.value.startswith("loc") and t.value[3:].isdigit():
                return LocLit(int(t.value[3:]))
            if ts.at("["):
                ts.advance()
                idx = self.parse(0)
                ts.expect("]")
                return Index(t.value, idx, pos=(t.line, t.col))
            return Var(t.value, pos=(t.line, t.col))
        if ts.accept("("):
            e = self.parse(0)
            ts.expect(")")
            return e
        ts.fail(f"expected expression, found {t}")


# ---------------------------------------------------------------- typing


def typecheck(e: Expr, var_type: Callable[[str], Optional[Type]],
              meta_type: Callable[[str], Optional[Type]] = lambda n: None,
              error: Callable[[str, Expr], None] = None) -> Type:
    """Return the type of ``e``; ``error(msg, node)`` must raise."""

    def fail(msg: str, node: Expr):
        if error is not None:
            error(msg, node)
        raise TypeError(msg)

    def go(n: Expr) -> Type:
        if isinstance(n, IntLit):
            return INT
        if isinstance(n, BoolLit):
            return BOOL
        if isinstance(n, (Pc, LocLit)):
            return INT
        if isinstance(n, Var):
            t = var_type(n.name)
            if t is None:
                fail(f"undeclared variable {n.name!r}", n)
            return t
        if isinstance(n, Meta):
            t = meta_type(n.name)
            if t is None:
                fail(f"unknown metavariable {n.name!r}", n)
            return t
        if isinstance(n, Index):
            t = var_type(n.name)
            if t is None:
                fail(f"undeclared variable {n.name!r}", n)
            if not isinstance(t, ArrayType):
                fail(f"{n.name!r} is not an array", n)
            if go(n.index) != INT:
                fail("array index must be int", n)
            return INT
        if isinstance(n, Unary):
            t = go(n.operand)
            want = BOOL if n.op == "!" else INT
            if t != want:
                fail(f"operator {n.op} expects {want}, got {t}", n)
            return want
        if isinstance(n, Binary):
            lt, rt = go(n.left), go(n.right)
            if n.op in ARITH:
                if lt != INT or rt != INT:
                    fail(f"operator {n.op} expects int operands", n)
                return INT
            if n.op in RELATIONAL:
                if lt != INT or rt != INT:
                    fail(f"operator {n.op} expects int operands", n)
                return BOOL
            if n.op in EQUALITY:
                if lt != rt or isinstance(lt, ArrayType):
                    fail(f"operator {n.op} compares {lt} with {rt}", n)
                return BOOL
            if lt != BOOL or rt != BOOL:
                fail(f"operator {n.op} expects bool operands", n)
            return BOOL
        fail(f"not an expression: {n!r}", n)

    return go(e)


# ---------------------------------------------------------------- evaluation


def c_div(a: int, b: int) -> int:
    if b == 0:
        raise Fault("division-by-zero")
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


def c_mod(a: int, b: int) -> int:
    if b == 0:
        raise Fault("division-by-zero")
    return a - b * c_div(a, b)


def c_index(arr, i: int) -> int:
    if not 0 <= i < len(arr):
        raise Fault("index-out-of-bounds")
    return arr[i]


def evaluate(e: Expr, state: Mapping[str, Value], env: Mapping[str, Value] = None,
             pc: int = None) -> Value:
    """Tree-walking evaluator; unresolved names raise ``Fault('unbound')``.

    ``&&``/``||`` are strict (both sides evaluated); ``=>`` is lazy in its
    consequent.
    """
    if isinstance(e, IntLit) or isinstance(e, BoolLit):
        return e.value
    if isinstance(e, Var):
        if e.name not in state:
            raise Fault("unbound")
        return state[e.name]
    if isinstance(e, Meta):
        if env is None or e.name not in env:
            raise Fault("unbound")
        return env[e.name]
    if isinstance(e, Pc):
        if pc is None:
            raise Fault("unbound")
        return pc
    if isinstance(e, LocLit):
        return e.loc
    if isinstance(e, Index):
        if e.name not in state:
            raise Fault("unbound")
        return c_index(state[e.name], evaluate(e.index, state, env, pc))
    if isinstance(e, Unary):
        x = evaluate(e.operand, state, env, pc)
        return (not x) if e.op == "!" else -x
    if isinstance(e, Binary):
        op = e.op
        if op == "=>":
            if not evaluate(e.left, state, env, pc):
                return True
            return bool(evaluate(e.right, state, env, pc))
        a = evaluate(e.left, state, env, pc)
        b = evaluate(e.right, state, env, pc)
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        if op == "/":
            return c_div(a, b)
        if op == "%":
            return c_mod(a, b)
        if op == "<":
            return a < b
        if op == "<=":
            return a <= b
        if op == ">":
            return a > b
        if op == ">=":
            return a >= b
        if op == "==":
            return a == b
        if op == "!=":
            return a != b
        if op == "&&":
            return bool(a and b)
        if op == "||":
            return bool(a or b)
    raise TypeError(f"cannot evaluate {e!r}")


# ---------------------------------------------------------------- compilation

_PY_OPS = {"&&": "&", "||": "|", "==": "==", "!=": "!=", "<": "<", "<=": "<=",
           ">": ">", ">=": ">=", "+": "+", "-": "-", "*": "*"}

RUNTIME_NAMESPACE = {"_div": c_div, "_mod": c_mod, "_idx": c_index, "Fault": Fault}


def to_python(e: Expr, state: str = "v", env: str = "e") -> str:
    """Python source for ``e``; program variables come from dict ``state``."""

    def go(n: Expr) -> str:
        if isinstance(n, IntLit):
            return repr(n.value)
        if isinstance(n, BoolLit):
            return "True" if n.value else "False"
        if isinstance(n, Var):
            return f"{state}[{n.name!r}]"
        if isinstance(n, Meta):
            return f"{env}[{n.name!r}]"
        if isinstance(n, Pc):
            return "pc"
        if isinstance(n, LocLit):
            return repr(n.loc)
        if isinstance(n, Index):
            return f"_idx({state}[{n.name!r}], {go(n.index)})"
        if isinstance(n, Unary):
            return f"(not {go(n.operand)})" if n.op == "!" else f"(-{go(n.operand)})"
        if isinstance(n, Binary):
            if n.op == "=>":
                return f"((not {go(n.left)}) or bool({go(n.right)}))"
            if n.op == "/":
                return f"_div({go(n.left)}, {go(n.right)})"
            if n.op == "%":
                return f"_mod({go(n.left)}, {go(n.right)})"
            return f"({go(n.left)} {_PY_OPS[n.op]} {go(n.right)})"
        raise TypeError(f"cannot compile {n!r}")

    return go(e)


@lru_cache(maxsize=None)
def _compile_source(source: str, params: str) -> Callable:
    return eval(f"lambda {params}: {source}", dict(RUNTIME_NAMESPACE))


def compile_expr(e: Expr, params: str = "v") -> Callable:
    """Compile to a Python function of ``params`` (``v`` state, ``e`` env, ``pc``)."""
    return _compile_source(to_python(e), params)


# ---------------------------------------------------------------- partial evaluation


def specialize_pc(e: Expr, loc: int) -> Expr:
    """Substitute ``pc := loc`` and fold what can be folded without changing
    strict-evaluation failures (an unresolved operand still makes the
    predicate false)."""

    def go(n: Expr) -> Expr:
        if isinstance(n, Pc):
            return IntLit(loc)
        if isinstance(n, LocLit):
            return IntLit(n.loc)
        if isinstance(n, Unary):
            x = go(n.operand)
            if isinstance(x, (IntLit, BoolLit)):
                return _lit(-x.value if n.op == "-" else (not x.value))
            return Unary(n.op, x)
        if isinstance(n, Binary):
            a, b = go(n.left), go(n.right)
            if n.op == "=>":
                if a == FALSE:
                    return TRUE
                if a == TRUE:
                    return b
                return Binary("=>", a, b)
            if n.op == "&&":
                if a == FALSE or b == FALSE:
                    return FALSE
                if a == TRUE:
                    return b
                if b == TRUE:
                    return a
                return Binary("&&", a, b)
            if n.op == "||":
                if a == FALSE:
                    return b
                if b == FALSE:
                    return a
                if a == TRUE and b == TRUE:
                    return TRUE
                return Binary("||", a, b)
            if isinstance(a, (IntLit, BoolLit)) and isinstance(b, (IntLit, BoolLit)):
                try:
                    return _lit(evaluate(Binary(n.op, a, b), {}))
                except Fault:
                    pass
            return Binary(n.op, a, b)
        if isinstance(n, Index):
            return Index(n.name, go(n.index))
        return n

    return go(e)


def _lit(v) -> Expr:
    return BoolLit(v) if isinstance(v, bool) else IntLit(v)
