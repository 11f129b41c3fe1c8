"""Test-by-test measurement: harvest one test, then consolidate incrementally.

Once a hyperlabel is covered its atoms stop being monitored, unless another
uncovered hyperlabel still needs them (lazy retirement).  Label atoms whose
recorded environment is empty are retired after their first occurrence,
since later occurrences cannot add anything.
"""
from __future__ import annotations

from typing import Dict, List, Sequence as Seq

from ..minilang.program import LocatedProgram
from ..normalize import DNFHyperlabel
from ..trace import DEFAULT_STEP_LIMIT, Outcome, TestDatum
from .atoms import AtomTable
from .consolidate import DEFAULT_BUDGET, CoverageVerdict, HyperlabelSearch
from .harvest import Harvester
from .log import OccurrenceLog


class Measurement:
    def __init__(self, p: LocatedProgram, dnfs: Seq[DNFHyperlabel],
                 step_limit: int = DEFAULT_STEP_LIMIT, budget: int = DEFAULT_BUDGET,
                 lazy: bool = True, dedup: bool = True):
        self.p = p
        self.dnfs = list(dnfs)
        self.step_limit = step_limit
        self.lazy = lazy
        self.table = AtomTable.build(self.dnfs, prune=dedup)
        self.harvester = Harvester(p, self.table, dedup)
        self.log = OccurrenceLog(list(self.table.atoms), dedup)
        self.searches = [HyperlabelSearch(d, self.table.index, budget) for d in self.dnfs]
        self.outcomes: Dict[str, Outcome] = {}
        self._users: Dict[int, set] = {}
        for hi, hs in enumerate(self.searches):
            for a in hs.atom_ids:
                self._users.setdefault(a, set()).add(hi)

    def add_test(self, t: TestDatum) -> Outcome:
        outcome, occs = self.harvester.run(t, self.step_limit)
        self.outcomes[t.id] = outcome
        fresh = self.log.extend(occs)
        touched = set()
        for occ in fresh:
            env = dict(occ.env)
            for hi in self._users.get(occ.atom, ()):
                self.searches[hi].feed(occ, env)
                touched.add(hi)
        retire = []
        for hi in sorted(touched):
            hs = self.searches[hi]
            if not hs.witness and hs.step() and self.lazy:
                for a in hs.atom_ids:
                    users = self._users[a]
                    users.discard(hi)
                    if not users:
                        retire.append(a)
        if self.lazy and self.log.dedup:
            for occ in fresh:
                if not occ.env:
                    retire.append(occ.atom)
        if retire:
            self.harvester.retire(retire)
        return outcome

    def run_suite(self, tests) -> None:
        for t in tests:
            self.add_test(t)

    def verdicts(self) -> List[CoverageVerdict]:
        return [hs.verdict() for hs in self.searches]
