"""Tracing interpreter for MiniImp.

Programs are translated once into Python source, one Python function per
MiniImp function, with a ``step(loc, v)`` call in front of every location.
Each step observes the state at the moment the location is reached, before
its statement runs; a decision's step therefore sees the pre-branch state.
"""
from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable, Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .errors import SuiteError, SyntaxErr
from .expr import BOOL, INT, RUNTIME_NAMESPACE, ArrayType, Fault, Type, Value, to_python
from .lexer import TokenStream, tokenize
from .minilang.ast import Assign, Call, CallStmt, Decl, If, Return, While
from .minilang.program import LocatedProgram

DEFAULT_STEP_LIMIT = 10 ** 6

Observer = Callable[[int, int, Dict[str, Value]], None]


# ---------------------------------------------------------------- test data


@dataclass(frozen=True)
class TestDatum:
    id: str
    values: Mapping[str, Value]

    __test__ = False  # not a pytest class

    def __reduce__(self):
        # mappingproxy does not pickle; needed by parallel harvesting
        return (_make_datum, (self.id, dict(self.values)))


def _make_datum(tid: str, values: Dict[str, Value]) -> "TestDatum":
    return TestDatum(tid, MappingProxyType(values))


@dataclass(frozen=True)
class TestSuite:
    tests: Tuple[TestDatum, ...]

    __test__ = False

    def __post_init__(self):
        seen = set()
        for t in self.tests:
            if t.id in seen:
                raise SuiteError(f"duplicate test id {t.id!r}")
            seen.add(t.id)

    def __len__(self) -> int:
        return len(self.tests)

    def __iter__(self):
        return iter(self.tests)

    def extended(self, more: Sequence[TestDatum]) -> "TestSuite":
        return TestSuite(self.tests + tuple(more))


def check_datum(p: LocatedProgram, t: TestDatum) -> Tuple[Value, ...]:
    """Validate ``t`` against the entry signature; returns positional args."""
    f = p.entry_function
    names = [prm.name for prm in f.params]
    if set(t.values) != set(names):
        raise SuiteError(f"test {t.id!r}: expected inputs {names}, got {sorted(t.values)}")
    args = []
    for prm in f.params:
        args.append(_coerce(t.id, prm.name, prm.type, t.values[prm.name]))
    return tuple(args)


def _coerce(tid: str, name: str, ty: Type, value) -> Value:
    if ty == BOOL:
        if type(value) is not bool:
            raise SuiteError(f"test {tid!r}: {name} must be bool, got {value!r}")
        return value
    if ty == INT:
        if type(value) is not int:
            raise SuiteError(f"test {tid!r}: {name} must be int, got {value!r}")
        return value
    if not isinstance(value, (tuple, list)) or len(value) != ty.size \
            or any(type(x) is not int for x in value):
        raise SuiteError(f"test {tid!r}: {name} must be {ty}, got {value!r}")
    return tuple(value)


def parse_suite(text: str) -> TestSuite:
    """Read the line-oriented ``.suite`` format: ``id | x=1, ok=true, a={1,2}``."""
    tests = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "|" not in line:
            raise SuiteError("expected 'id | assignments'", lineno, 1)
        tid, _, rest = line.partition("|")
        tid = tid.strip()
        if not tid:
            raise SuiteError("missing test id", lineno, 1)
        tests.append(TestDatum(tid, MappingProxyType(_parse_assignments(rest, lineno))))
    return TestSuite(tuple(tests))


def _parse_assignments(text: str, lineno: int) -> Dict[str, Value]:
    try:
        toks = tokenize(text)
    except SyntaxErr as e:
        raise SuiteError(e.message, lineno, e.col) from None
    for i, t in enumerate(toks):
        toks[i] = t.__class__(t.kind, t.value, lineno, t.col)
    ts = TokenStream(toks, SuiteError)
    out: Dict[str, Value] = {}
    if ts.tok.kind == "eof":
        return out
    while True:
        name = ts.expect_ident().value
        ts.expect("=")
        if name in out:
            ts.fail(f"duplicate input {name!r}")
        out[name] = _parse_value(ts)
        if not ts.accept(","):
            break
    if ts.tok.kind != "eof":
        ts.fail(f"unexpected {ts.tok}")
    return out


def _parse_int(ts: TokenStream) -> int:
    neg = ts.accept("-")
    n = ts.expect_int()
    return -n if neg else n


def _parse_value(ts: TokenStream) -> Value:
    if ts.accept("true"):
        return True
    if ts.accept("false"):
        return False
    if ts.accept("{"):
        cells = []
        if not ts.at("}"):
            while True:
                cells.append(_parse_int(ts))
                if not ts.accept(","):
                    break
        ts.expect("}")
        return tuple(cells)
    return _parse_int(ts)


def format_value(v: Value) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, tuple):
        return "{" + ",".join(str(x) for x in v) + "}"
    return str(v)


def format_suite(suite: TestSuite) -> str:
    lines = []
    for t in suite:
        body = ", ".join(f"{k}={format_value(v)}" for k, v in t.values.items())
        lines.append(f"{t.id} | {body}".rstrip())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- runs


class Step(NamedTuple):
    k: int
    loc: int
    state: Mapping[str, Value]


@dataclass(frozen=True)
class Outcome:
    kind: str  # "returned" | "error" | "step-limit"
    value: Optional[Value] = None
    error: Optional[str] = None

    def __str__(self) -> str:
        if self.kind == "returned":
            return f"returned({format_value(self.value) if self.value is not None else ''})"
        if self.kind == "error":
            return f"error({self.error})"
        return "step-limit"


@dataclass(frozen=True)
class Run:
    test_id: str
    steps: Tuple[Step, ...]
    outcome: Outcome

    def __len__(self) -> int:
        return len(self.steps)


def reaches(run: Run, loc: int) -> List[Tuple[int, Mapping[str, Value]]]:
    return [(s.k, s.state) for s in run.steps if s.loc == loc]


# ---------------------------------------------------------------- compilation


class _StepLimit(Exception):
    pass


class _Ctx:
    __slots__ = ("k", "limit", "observer")

    def __init__(self, limit: int, observer: Optional[Observer]):
        self.k = 0
        self.limit = limit
        self.observer = observer

    def step(self, loc: int, v: Dict[str, Value]) -> None:
        k = self.k
        if k >= self.limit:
            raise _StepLimit
        self.k = k + 1
        self.observer(k, loc, v)


class _CountingCtx(_Ctx):
    __slots__ = ()

    def step(self, loc: int, v: Dict[str, Value]) -> None:
        k = self.k
        if k >= self.limit:
            raise _StepLimit
        self.k = k + 1


class _TableCtx(_Ctx):
    """Dispatches each step to the callbacks registered for its location."""

    __slots__ = ("slots",)

    def __init__(self, limit: int, table: Mapping[int, List[Callable]]):
        super().__init__(limit, None)
        size = max(table, default=0) + 1
        slots: List[Optional[Tuple[Callable, ...]]] = [None] * size
        for loc, cbs in table.items():
            if cbs:
                slots[loc] = tuple(cbs)
        self.slots = slots

    def step(self, loc: int, v: Dict[str, Value]) -> None:
        k = self.k
        if k >= self.limit:
            raise _StepLimit
        self.k = k + 1
        try:
            cbs = self.slots[loc]
        except IndexError:
            return
        if cbs is not None:
            for cb in cbs:
                cb(k, v)


def _store(arr: Tuple[int, ...], i: int, value: int) -> Tuple[int, ...]:
    if not 0 <= i < len(arr):
        raise Fault("index-out-of-bounds")
    return arr[:i] + (value,) + arr[i + 1:]


def _fname(name: str) -> str:
    return f"__f_{name}"


class _Codegen:
    def __init__(self, p: LocatedProgram):
        self.p = p
        self.lines: List[str] = []

    def emit(self, depth: int, text: str) -> None:
        self.lines.append("    " * depth + text)

    def generate(self) -> str:
        for f in self.p.functions:
            args = ", ".join(f"a{i}" for i in range(len(f.params)))
            self.emit(0, f"def {_fname(f.name)}(ctx{', ' if args else ''}{args}):")
            init = ", ".join(f"{prm.name!r}: a{i}" for i, prm in enumerate(f.params))
            self.emit(1, f"v = {{{init}}}")
            self.emit(1, "step = ctx.step")
            self.emit(1, f"step({f.entry_loc}, v)")
            self.block(f.body, 1, drop_locals=False)
            if f.ret == "void":
                self.emit(1, "return None")
            else:
                self.emit(1, "raise Fault('missing-return')")
            self.emit(0, "")
        return "\n".join(self.lines)

    def rhs(self, r) -> str:
        if isinstance(r, Call):
            args = "".join(f", {to_python(a)}" for a in r.args)
            return f"{_fname(r.func)}(ctx{args})"
        return to_python(r)

    def block(self, body, depth: int, drop_locals: bool = True) -> None:
        declared = []
        for s in body:
            if not isinstance(s, While):
                self.emit(depth, f"step({s.loc}, v)")
            if isinstance(s, Decl):
                if isinstance(s.type, ArrayType):
                    value = f"(0,) * {s.type.size}"
                elif s.rhs is None:
                    value = "False" if s.type == BOOL else "0"
                else:
                    value = self.rhs(s.rhs)
                self.emit(depth, f"v[{s.name!r}] = {value}")
                declared.append(s.name)
            elif isinstance(s, Assign):
                if s.index is None:
                    self.emit(depth, f"v[{s.target!r}] = {self.rhs(s.rhs)}")
                else:
                    self.emit(depth, f"_i = {to_python(s.index)}")
                    self.emit(depth, f"v[{s.target!r}] = _store(v[{s.target!r}], _i, {self.rhs(s.rhs)})")
            elif isinstance(s, If):
                self.emit(depth, f"if {to_python(s.cond)}:")
                self.block(s.then, depth + 1)
                if s.orelse:
                    self.emit(depth, "else:")
                    self.block(s.orelse, depth + 1)
            elif isinstance(s, While):
                self.emit(depth, "while True:")
                self.emit(depth + 1, f"step({s.loc}, v)")
                self.emit(depth + 1, f"if not {to_python(s.cond)}:")
                self.emit(depth + 2, "break")
                self.block(s.body, depth + 1)
            elif isinstance(s, Return):
                value = "None" if s.value is None else to_python(s.value)
                self.emit(depth, f"return {value}")
            elif isinstance(s, CallStmt):
                self.emit(depth, self.rhs(s.call))
        if drop_locals:
            for name in declared:
                self.emit(depth, f"del v[{name!r}]")
        if not body:
            self.emit(depth, "pass")


class CompiledProgram:
    def __init__(self, p: LocatedProgram):
        self.program = p
        self.source = _Codegen(p).generate()
        ns = dict(RUNTIME_NAMESPACE)
        ns["_store"] = _store
        exec(compile(self.source, f"<miniimp:{p.entry}>", "exec"), ns)
        self.entry = ns[_fname(p.entry)]

    def run(self, args: Tuple[Value, ...], step_limit: int,
            observer: Optional[Observer] = None) -> Tuple[Outcome, int]:
        """Execute on positional ``args``; returns (outcome, steps taken)."""
        if step_limit < 1:
            raise ValueError("step_limit must be >= 1")
        ctx = _CountingCtx(step_limit, None) if observer is None else _Ctx(step_limit, observer)
        return self._go(ctx, args)

    def run_dispatch(self, args: Tuple[Value, ...], step_limit: int,
                     table: Mapping[int, List[Callable]]) -> Tuple[Outcome, int]:
        """Like :meth:`run`, calling ``cb(k, v)`` for each callback in ``table[loc]``."""
        if step_limit < 1:
            raise ValueError("step_limit must be >= 1")
        if not table:
            return self._go(_CountingCtx(step_limit, None), args)
        return self._go(_TableCtx(step_limit, table), args)

    def _go(self, ctx: _Ctx, args) -> Tuple[Outcome, int]:
        try:
            outcome = Outcome("returned", self.entry(ctx, *args))
        except Fault as f:
            outcome = Outcome("error", error=f.kind)
        except _StepLimit:
            outcome = Outcome("step-limit")
        except RecursionError:
            outcome = Outcome("error", error="stack-overflow")
        return outcome, ctx.k


def compiled(p: LocatedProgram) -> CompiledProgram:
    cp = p.__dict__.get("_compiled")
    if cp is None:
        cp = CompiledProgram(p)
        object.__setattr__(p, "_compiled", cp)
    return cp


def execute(p: LocatedProgram, t: TestDatum, step_limit: int = DEFAULT_STEP_LIMIT) -> Run:
    """Run ``t`` and record every step with a snapshot of the reached state."""
    args = check_datum(p, t)
    steps: List[Step] = []
    append = steps.append

    def record(k: int, loc: int, v: Dict[str, Value]) -> None:
        append(Step(k, loc, MappingProxyType(dict(v))))

    outcome, _ = compiled(p).run(args, step_limit, record)
    return Run(t.id, tuple(steps), outcome)


def run_plain(p: LocatedProgram, t: TestDatum, step_limit: int = DEFAULT_STEP_LIMIT) -> Outcome:
    """Execute without recording anything (the no-measurement baseline)."""
    return compiled(p).run(check_datum(p, t), step_limit)[0]
