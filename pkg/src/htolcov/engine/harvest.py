"""Harvesting occurrences by running every test under monitors."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence as Seq, Tuple

from ..htol.ast import Label, Sequence
from ..minilang.program import LocatedProgram
from ..normalize import DNFHyperlabel
from ..trace import DEFAULT_STEP_LIMIT, Outcome, Run, TestDatum, TestSuite, check_datum, compiled
from .atoms import AtomTable
from .log import Occurrence, OccurrenceLog
from .monitors import LabelMonitor, SequenceMonitor


class Harvester:
    """Monitors for every atom of a DNF set, reusable across tests.

    ``dedup=False`` keeps every occurrence and every partial sequence match,
    with unpruned environments; it exists to check that deduplication does
    not change verdicts.
    """

    def __init__(self, p: LocatedProgram, table: AtomTable, dedup: bool = True):
        self.p = p
        self.table = table
        self.dedup = dedup
        self.program = compiled(p)
        self._buffer: List[Tuple[int, Tuple, Tuple[int, ...]]] = []
        self.monitors: Dict[int, object] = {}
        self.callbacks: Dict[int, Dict[int, Callable]] = {}
        locs = p.locations
        for i, atom in enumerate(table.atoms):
            keep = table.relevant[i]
            # with dedup, an env already reported by any test is dropped at the source
            seen = set() if dedup else None
            if isinstance(atom, Label):
                m = LabelMonitor(atom, keep, self._sink(i), seen)
                self.callbacks[i] = m.callbacks()
            else:
                m = SequenceMonitor(atom, keep, self._sink(i, seen), dedup)
                self.callbacks[i] = m.callbacks(locs)
            self.monitors[i] = m
        self.active = set(range(len(table.atoms)))
        self._dispatch: Dict[int, List[Callable]] = {}
        self._stateful: List[SequenceMonitor] = []
        self._rebuild()

    def _sink(self, atom: int, seen: Optional[set] = None) -> Callable:
        buf = self._buffer
        if seen is None:
            def sink(env: Tuple, steps: Tuple[int, ...]) -> None:
                buf.append((atom, env, steps))
        else:
            def sink(env: Tuple, steps: Tuple[int, ...]) -> None:
                if env not in seen:
                    seen.add(env)
                    buf.append((atom, env, steps))
        return sink

    def _rebuild(self) -> None:
        table: Dict[int, List[Callable]] = {}
        for i in sorted(self.active):
            for loc, cb in self.callbacks[i].items():
                table.setdefault(loc, []).append(cb)
        self._dispatch = table
        self._stateful = [self.monitors[i] for i in sorted(self.active)
                          if isinstance(self.monitors[i], SequenceMonitor)]

    def retire(self, atoms) -> None:
        """Stop monitoring ``atoms`` (takes effect from the next test)."""
        before = len(self.active)
        self.active.difference_update(atoms)
        if len(self.active) != before:
            self._rebuild()

    def run(self, t: TestDatum, step_limit: int = DEFAULT_STEP_LIMIT) -> Tuple[Outcome, List[Occurrence]]:
        """Execute ``t``; returns its outcome and the occurrences it produced.

        With ``dedup`` on, only environments no earlier run of this harvester
        reported are returned."""
        args = check_datum(self.p, t)
        for m in self._stateful:
            m.reset()
        outcome, _ = self.program.run_dispatch(args, step_limit, self._dispatch)
        if not self._buffer:
            return outcome, []
        relevant = self.table.relevant
        out = [Occurrence(atom, t.id, steps, tuple(zip(relevant[atom], env)))
               for atom, env, steps in self._buffer]
        self._buffer.clear()
        return outcome, out


def harvest(p: LocatedProgram, dnf_set: Seq[DNFHyperlabel], ts: TestSuite,
            step_limit: int = DEFAULT_STEP_LIMIT, dedup: bool = True,
            workers: int = 1, table: Optional[AtomTable] = None,
            outcomes: Optional[Dict[str, Outcome]] = None) -> OccurrenceLog:
    """Run every test and record all occurrences of every atom.

    With ``workers > 1`` tests are split into chunks harvested in separate
    processes; the chunk logs are merged in test order, so the result does
    not depend on scheduling.  Test outcomes go to ``outcomes`` if given.
    """
    outcomes = {} if outcomes is None else outcomes
    table = table or AtomTable.build(dnf_set, prune=dedup)
    log = OccurrenceLog(list(table.atoms), dedup)
    tests = list(ts)
    if workers > 1 and len(tests) > 1:
        chunks = [tests[i::workers] for i in range(workers)]
        order = {t.id: n for n, t in enumerate(tests)}
        with ProcessPoolExecutor(workers) as pool:
            parts = pool.map(_harvest_chunk, [(p.source, p.entry, table, c, step_limit, dedup)
                                              for c in chunks if c])
            occs = []
            for part_occs, part_outcomes in parts:
                occs.extend(part_occs)
                outcomes.update(part_outcomes)
        # stable within a test, tests in suite order
        occs.sort(key=lambda o: order[o.test_id])
        log.extend(occs)
        for t in tests:
            outcomes[t.id] = outcomes.pop(t.id)
        return log
    h = Harvester(p, table, dedup)
    for t in tests:
        outcomes[t.id], occs = h.run(t, step_limit)
        log.extend(occs)
    return log


def _harvest_chunk(args) -> Tuple[List[Occurrence], Dict[str, Outcome]]:
    from ..minilang.parser import parse_program
    source, entry, table, tests, step_limit, dedup = args
    h = Harvester(parse_program(source, entry), table, dedup)
    out: List[Occurrence] = []
    outcomes: Dict[str, Outcome] = {}
    for t in tests:
        outcomes[t.id], occs = h.run(t, step_limit)
        out.extend(occs)
    return out, outcomes


def match_sequence(run: Run, seq: Sequence, dedup: bool = True) -> List[Occurrence]:
    """All environment-distinct matches of ``seq`` in a recorded run."""
    names = tuple(sorted(n for lab in seq.elems for n in lab.names))
    found: List[Tuple[Tuple, Tuple[int, ...]]] = []
    mon = SequenceMonitor(seq, names, lambda env, steps: found.append((env, steps)), dedup)
    cbs = mon.callbacks(sorted({s.loc for s in run.steps}))
    for s in run.steps:
        cb = cbs.get(s.loc)
        if cb is not None:
            cb(s.k, s.state)
    out, seen = [], set()
    for env, steps in found:
        if dedup and env in seen:
            continue
        seen.add(env)
        out.append(Occurrence(-1, run.test_id, steps, tuple(zip(names, env))))
    return out
