"""Reference semantics: direct application of the coverage rules.

This is a test fixture, deliberately naive and independent of the engine: it
records full runs, enumerates total environments over the bound names and
checks each hyperlabel constructor recursively with the tree-walking
evaluator.  Candidate values for a name are the given domain plus every value
its binding expressions take anywhere they could be evaluated in the runs.
"""
from __future__ import annotations

import itertools
from typing import Dict, Iterable, List, Mapping, Optional, Sequence as Seq, Tuple

from ..expr import Fault, Value, evaluate
from ..htol.ast import Conj, Disj, Guard, Hyperlabel, Label, Sequence, bound_names, labels_of
from ..minilang.program import LocatedProgram
from ..trace import DEFAULT_STEP_LIMIT, Run, TestSuite, execute

MAX_ENVIRONMENTS = 200_000


class OracleRefused(Exception):
    """The instance is too large for exhaustive enumeration."""


def _holds(e, state, env=None, pc=None) -> bool:
    try:
        return bool(evaluate(e, state, env, pc))
    except Fault:
        return False


class Oracle:
    def __init__(self, runs: Seq[Run]):
        self.runs = list(runs)
        self._memo: Dict = {}

    @classmethod
    def of(cls, p: LocatedProgram, ts: TestSuite, step_limit: int = DEFAULT_STEP_LIMIT) -> "Oracle":
        return cls([execute(p, t, step_limit) for t in ts])

    # ---------------------------------------------------------------- rules

    def covers(self, h: Hyperlabel, env: Mapping[str, Value]) -> bool:
        """<TS, E> covers h."""
        if isinstance(h, Label):
            return any(self._label_steps(h, run, env) for run in self.runs)
        if isinstance(h, Sequence):
            return any(self._sequence_in(h, run, env) for run in self.runs)
        if isinstance(h, Guard):
            return self.covers(h.body, env) and _holds(h.psi, {}, env)
        if isinstance(h, Conj):
            return self.covers(h.left, env) and self.covers(h.right, env)
        if isinstance(h, Disj):
            return self.covers(h.left, env) or self.covers(h.right, env)
        raise TypeError(f"not a hyperlabel: {h!r}")

    def _label_at(self, lab: Label, state, env) -> bool:
        if not _holds(lab.pred, state):
            return False
        for name, e in lab.bindings:
            try:
                value = evaluate(e, state)
            except Fault:
                return False
            if name not in env or env[name] != value or type(env[name]) is not type(value):
                return False
        return True

    def _label_steps(self, lab: Label, run: Run, env) -> List[int]:
        key = ("l", lab, id(run), tuple((n, env.get(n)) for n in lab.names))
        hit = self._memo.get(key)
        if hit is None:
            hit = self._memo[key] = [s.k for s in run.steps
                                     if s.loc == lab.loc and self._label_at(lab, s.state, env)]
        return hit

    def _sequence_in(self, seq: Sequence, run: Run, env) -> bool:
        names = [n for lab in seq.elems for n in lab.names]
        key = ("s", seq, id(run), tuple((n, env.get(n)) for n in names))
        hit = self._memo.get(key)
        if hit is None:
            hit = self._memo[key] = self._sequence_scan(seq, run, env)
        return hit

    def _sequence_scan(self, seq: Sequence, run: Run, env) -> bool:
        # alive[j]: some match of elements 1..i ends at step j and every step
        # after j so far satisfies phi_i
        matches = [set(self._label_steps(lab, run, env)) for lab in seq.elems]
        ends = matches[0]
        for i in range(1, len(seq.elems)):
            phi = seq.path_preds[i - 1]
            nxt = set()
            waiting = False
            for s in run.steps:
                if waiting and s.k in matches[i]:
                    nxt.add(s.k)
                if waiting:
                    waiting = _holds(phi, s.state, env, s.loc)
                if s.k in ends:
                    waiting = True
            ends = nxt
            if not ends:
                return False
        return bool(ends)

    # ---------------------------------------------------------------- top level

    def candidates(self, h: Hyperlabel, domains: Mapping[str, Iterable[Value]]) -> Dict[str, List[Value]]:
        out: Dict[str, List[Value]] = {}
        for n in dict.fromkeys(bound_names(h)):
            out[n] = list(dict.fromkeys(domains.get(n, ())))
        for lab in labels_of(h):
            for name, e in lab.bindings:
                vals = out[name]
                for run in self.runs:
                    for s in run.steps:
                        if s.loc != lab.loc:
                            continue
                        try:
                            v = evaluate(e, s.state)
                        except Fault:
                            continue
                        if not any(v == w and type(v) is type(w) for w in vals):
                            vals.append(v)
        return out

    def environments(self, h: Hyperlabel, domains: Mapping[str, Iterable[Value]] = None,
                     limit: int = MAX_ENVIRONMENTS):
        cand = self.candidates(h, domains or {})
        names = list(cand)
        total = 1
        for n in names:
            total *= len(cand[n])
        if total > limit:
            raise OracleRefused(f"{total} environments to enumerate (limit {limit})")
        for combo in itertools.product(*(cand[n] for n in names)):
            yield dict(zip(names, combo))

    def covered(self, h: Hyperlabel, domains: Mapping[str, Iterable[Value]] = None) -> bool:
        return self.witness(h, domains) is not None

    def witness(self, h: Hyperlabel, domains=None) -> Optional[Dict[str, Value]]:
        for env in self.environments(h, domains):
            if self.covers(h, env):
                return env
        return None


def oracle_covers(h: Hyperlabel, p: LocatedProgram, ts: TestSuite,
                  domains: Mapping[str, Iterable[Value]] = None,
                  step_limit: int = DEFAULT_STEP_LIMIT) -> bool:
    """TS covers h, decided by enumerating environments."""
    return Oracle.of(p, ts, step_limit).covered(h, domains)


def oracle_covering_envs(h: Hyperlabel, p: LocatedProgram, ts: TestSuite,
                         domains=None, step_limit: int = DEFAULT_STEP_LIMIT) -> List[Tuple]:
    """Every enumerated environment E with <TS, E> covering h (sorted items)."""
    o = Oracle.of(p, ts, step_limit)
    return [tuple(sorted(e.items())) for e in o.environments(h, domains) if o.covers(h, e)]
