"""On-the-fly monitors fed by the interpreter, one per atom.

A label monitor runs at its location: it checks the predicate, evaluates
every binding (a failing binding discards the occurrence) and reports the
values of the names worth keeping.

A sequence monitor keeps, for each prefix length, the set of partial
matches, each identified by the environment recorded so far.  Two partial
matches with equal environments behave identically from then on, so only
one is kept (with the step numbers of the first).  At a step:

* new partial matches are built from the sets as they stood before the step
  (so an element never matches at the same step as its predecessor);
* the surviving old partial matches must then satisfy their path predicate,
  since the step lies strictly between two matched elements.

Path predicates are specialised per location (``pc`` replaced by the
location), and the monitor only runs where some predicate is not trivially
true.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence as Seq, Tuple

from ..expr import (RUNTIME_NAMESPACE, TRUE, Expr, Fault, meta_vars, specialize_pc, to_python)
from ..htol.ast import Label, Sequence

Sink = Callable[[Tuple, Tuple[int, ...]], None]


@lru_cache(maxsize=None)
def compile_label(lab: Label, out: Tuple[str, ...]) -> Callable:
    """``f(v)`` -> tuple of the values of ``out``, or None if not covered."""
    lines = ["def _f(v):", "    try:", "        pass"]
    if lab.pred != TRUE:
        lines.append(f"        if not ({to_python(lab.pred)}): return None")
    slots = {}
    for j, (name, e) in enumerate(lab.bindings):
        lines.append(f"        _b{j} = {to_python(e)}")
        slots[name] = f"_b{j}"
    lines.append("    except (Fault, KeyError): return None")
    lines.append("    return (" + "".join(f"{slots[n]}, " for n in out) + ")")
    ns = dict(RUNTIME_NAMESPACE)
    exec("\n".join(lines), ns)
    return ns["_f"]


@lru_cache(maxsize=None)
def compile_path_pred(phi: Expr, names: Tuple[str, ...]) -> Callable:
    """``g(v, env_tuple)`` -> bool; faults and unresolved names give False."""
    body = to_python(phi, state="v", env="e")
    src = ("def _g(v, t):\n"
           "    try:\n"
           f"        e = dict(zip({names!r}, t))\n"
           f"        return bool({body})\n"
           "    except (Fault, KeyError):\n"
           "        return False\n")
    ns = dict(RUNTIME_NAMESPACE)
    exec(src, ns)
    return ns["_g"]


class LabelMonitor:
    """``seen``, when given, holds environments already reported (possibly by
    earlier tests); they are not reported again."""

    def __init__(self, lab: Label, keep: Tuple[str, ...], sink: Sink, seen: Optional[set] = None):
        self.loc = lab.loc
        self.fn = compile_label(lab, keep)
        self.sink = sink
        self.seen = seen

    def callbacks(self) -> Dict[int, Callable]:
        fn, sink, seen = self.fn, self.sink, self.seen
        if seen is None:
            def cb(k: int, v) -> None:
                t = fn(v)
                if t is not None:
                    sink(t, (k,))
        else:
            def cb(k: int, v) -> None:
                t = fn(v)
                if t is not None and t not in seen:
                    seen.add(t)
                    sink(t, (k,))

        return {self.loc: cb}

    def reset(self) -> None:
        pass


class SequenceMonitor:
    def __init__(self, seq: Sequence, keep: Tuple[str, ...], sink: Sink, dedup: bool = True):
        self.seq = seq
        self.sink = sink
        self.dedup = dedup
        n = len(seq.elems)
        self.n = n
        keep_set = set(keep)
        # names each stage must remember: later path predicates + final output
        later = [set() for _ in range(n)]
        acc: set = set()
        for i in range(n - 2, -1, -1):
            acc = acc | meta_vars(seq.path_preds[i])
            later[i] = set(acc)
        self.stage_names: List[Tuple[str, ...]] = []
        self.elem_fns: List[Callable] = []
        self.combine: List[List[Tuple[int, int]]] = []
        for i, lab in enumerate(seq.elems):
            want = later[i] | keep_set if dedup else set(lab.names) | later[i] | keep_set
            out = tuple(nm for nm in lab.names if nm in want)
            self.elem_fns.append(compile_label(lab, out))
            prev = self.stage_names[i - 1] if i else ()
            if i == n - 1:
                names = tuple(sorted(nm for nm in prev + out if nm in keep_set))
            else:
                names = tuple(nm for nm in prev + out if not dedup or nm in want)
            # (0, j): j-th slot of the previous stage, (1, j): j-th output of elem i
            src = {nm: (0, j) for j, nm in enumerate(prev)}
            src.update({nm: (1, j) for j, nm in enumerate(out)})
            self.combine.append([src[nm] for nm in names])
            self.stage_names.append(names)
        self.stages: List = []
        self.reset()

    def reset(self) -> None:
        self.stages = [{} if self.dedup else [] for _ in range(self.n - 1)]

    def _phi_at(self, i: int, loc: int) -> Optional[Callable]:
        phi = specialize_pc(self.seq.path_preds[i], loc)
        if phi == TRUE:
            return None
        return compile_path_pred(phi, self.stage_names[i])

    def callbacks(self, locations: Seq[int]) -> Dict[int, Callable]:
        """One callback per location where this monitor has work to do."""
        out = {}
        for loc in locations:
            elems = [i for i in range(self.n - 1, -1, -1) if self.seq.elems[i].loc == loc]
            phis = [(i, g) for i in range(self.n - 1) for g in [self._phi_at(i, loc)] if g]
            if elems or phis:
                out[loc] = self._make_cb(elems, phis)
        return out

    def _make_cb(self, elems: List[int], phis: List[Tuple[int, Callable]]) -> Callable:
        n, fns, combine, sink, dedup = self.n, self.elem_fns, self.combine, self.sink, self.dedup
        mon = self

        def cb(k: int, v) -> None:
            stages = mon.stages
            new = []
            for i in elems:
                if i == 0:
                    t = fns[0](v)
                    if t is not None:
                        new.append((0, tuple(t[j] for _, j in combine[0]), (k,)))
                    continue
                src = stages[i - 1]
                if not src:
                    continue
                t = fns[i](v)
                if t is None:
                    continue
                comb = combine[i]
                items = src.items() if dedup else src
                for env, steps in items:
                    e2 = tuple(env[j] if s == 0 else t[j] for s, j in comb)
                    new.append((i, e2, steps + (k,)))
            for i, g in phis:
                st = stages[i]
                if st:
                    if dedup:
                        stages[i] = {e: s for e, s in st.items() if g(v, e)}
                    else:
                        stages[i] = [(e, s) for e, s in st if g(v, e)]
            for i, env, steps in new:
                if i == n - 1:
                    sink(env, steps)
                elif dedup:
                    stages[i].setdefault(env, steps)
                else:
                    stages[i].append((env, steps))

        return cb
