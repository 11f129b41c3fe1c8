"""Consolidation: searching occurrence combinations that satisfy a guard.

Every disjunct keeps, per atom position, the distinct environments seen so
far (projected on the names its guard reads).  New environments arrive in
batches; each batch is searched semi-naively, i.e. only combinations that
use at least one new environment are tried, so feeding occurrences test by
test costs no more than one search over the final log.  The search is a
depth-first enumeration that checks each guard conjunct as soon as all its
names are assigned, and stops at the first witness.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence as Seq, Tuple

from ..expr import RUNTIME_NAMESPACE, Expr, Fault, conjuncts, meta_vars, to_python
from ..htol.semantics import eval_guard
from ..normalize import DNFHyperlabel, GuardedConjunction, leaf_names
from .log import Occurrence, OccurrenceLog

COVERED = "covered"
UNCOVERED = "uncovered"
UNKNOWN_BUDGET = "unknown-budget"
DEFAULT_BUDGET = 10 ** 6


@dataclass(frozen=True)
class Witness:
    disjunct: int
    occurrences: Tuple[Occurrence, ...]

    @property
    def env(self) -> Dict:
        out: Dict = {}
        for o in self.occurrences:
            out.update(o.env)
        return out

    @property
    def tests(self) -> List[str]:
        seen: Dict[str, None] = {}
        for o in self.occurrences:
            seen.setdefault(o.test_id, None)
        return list(seen)


@dataclass(frozen=True)
class CoverageVerdict:
    id: str
    status: str
    witness: Optional[Witness] = None
    nodes: int = 0

    @property
    def covered(self) -> bool:
        return self.status == COVERED


class _Budget(Exception):
    pass


def _compile_check(e: Expr):
    src = ("def _c(e):\n    try:\n"
           f"        return bool({to_python(e, env='e')})\n"
           "    except (Fault, KeyError):\n        return False\n")
    ns = dict(RUNTIME_NAMESPACE)
    exec(src, ns)
    return ns["_c"]


class DisjunctSearch:
    def __init__(self, d: GuardedConjunction, atom_ids: Seq[int]):
        self.atom_ids = list(atom_ids)
        p = len(self.atom_ids)
        gnames = meta_vars(d.psi)
        self.names = [tuple(n for n in leaf_names(a) if n in gnames) for a in d.atoms]
        # conjunct i is checked at the first position where its names are all bound
        self.checks: List[List] = [[] for _ in range(p + 1)]
        bound_at = {n: q for q, ns in enumerate(self.names) for n in ns}
        for c in conjuncts(d.psi):
            names = meta_vars(c)
            q = max((bound_at[n] for n in names), default=-1) + 1
            self.checks[q].append(_compile_check(c))
        self.old: List[List[Tuple[Tuple, Occurrence]]] = [[] for _ in range(p)]
        self.new: List[List[Tuple[Tuple, Occurrence]]] = [[] for _ in range(p)]
        self.seen: List[set] = [set() for _ in range(p)]
        self.exhausted = False

    def feed(self, pos: int, occ: Occurrence, env: Dict) -> None:
        try:
            key = tuple(env[n] for n in self.names[pos])
        except KeyError as exc:
            raise ValueError(f"occurrence of atom {occ.atom} lacks guard name {exc}") from None
        if key not in self.seen[pos]:
            self.seen[pos].add(key)
            self.new[pos].append((key, occ))

    @property
    def dirty(self) -> bool:
        return any(self.new)

    def search(self, budget: int) -> Tuple[Optional[Tuple[Occurrence, ...]], int]:
        """Search combinations using a new env; returns (witness, nodes used).

        Raises ``_Budget`` (with the disjunct marked exhausted) when ``budget``
        nodes are not enough.
        """
        p = len(self.atom_ids)
        nodes = [0]
        found = None
        for check in self.checks[0]:
            if not check({}):
                self._commit()
                return None, 0
        for piv in range(p):
            if not self.new[piv]:
                continue
            doms = [self.old[q] if q < piv else self.new[q] if q == piv
                    else self.old[q] + self.new[q] for q in range(p)]
            if any(not d for d in doms):
                continue
            found = self._dfs(doms, 0, {}, [], nodes, budget)
            if found is not None:
                break
        self._commit()
        return found, nodes[0]

    def _commit(self) -> None:
        for q in range(len(self.atom_ids)):
            self.old[q].extend(self.new[q])
            self.new[q] = []

    def _dfs(self, doms, q: int, env: Dict, chosen: List[Occurrence], nodes, budget):
        if q == len(doms):
            return tuple(chosen)
        names = self.names[q]
        checks = self.checks[q + 1]
        for key, occ in doms[q]:
            nodes[0] += 1
            if nodes[0] > budget:
                self.exhausted = True
                raise _Budget
            env2 = dict(env)
            env2.update(zip(names, key))
            if all(c(env2) for c in checks):
                chosen.append(occ)
                r = self._dfs(doms, q + 1, env2, chosen, nodes, budget)
                if r is not None:
                    return r
                chosen.pop()
        return None


class HyperlabelSearch:
    """Incremental consolidation state of one DNF hyperlabel."""

    def __init__(self, dnf: DNFHyperlabel, atom_index: Dict, budget: int = DEFAULT_BUDGET):
        self.dnf = dnf
        self.budget = budget
        self.nodes = 0
        self.status = UNCOVERED
        self.witness: Optional[Witness] = None
        self.disjuncts = [DisjunctSearch(d, [atom_index[a] for a in d.atoms])
                          for d in dnf.disjuncts]
        # atom -> [(disjunct, position)]
        self.uses: Dict[int, List[Tuple[int, int]]] = {}
        for di, ds in enumerate(self.disjuncts):
            for pos, a in enumerate(ds.atom_ids):
                self.uses.setdefault(a, []).append((di, pos))

    @property
    def atom_ids(self) -> List[int]:
        return list(self.uses)

    def feed(self, occ: Occurrence, env: Dict = None) -> None:
        if self.status == COVERED:
            return
        env = dict(occ.env) if env is None else env
        for di, pos in self.uses.get(occ.atom, ()):
            ds = self.disjuncts[di]
            if not ds.exhausted:
                ds.feed(pos, occ, env)

    def step(self) -> bool:
        """Search every disjunct with new environments; True once covered."""
        if self.status == COVERED:
            return True
        for di, ds in enumerate(self.disjuncts):
            if ds.exhausted or not ds.dirty:
                continue
            try:
                found, used = ds.search(self.budget - self.nodes)
            except _Budget:
                self.nodes = self.budget
                continue
            self.nodes += used
            if found is not None:
                self.status = COVERED
                self.witness = Witness(di, found)
                return True
        return False

    def verdict(self) -> CoverageVerdict:
        status = self.status
        if status != COVERED and any(ds.exhausted for ds in self.disjuncts):
            status = UNKNOWN_BUDGET
        return CoverageVerdict(self.dnf.id, status, self.witness, self.nodes)


def consolidate(dnf: DNFHyperlabel, log: OccurrenceLog, budget: int = DEFAULT_BUDGET) -> CoverageVerdict:
    """Verdict of ``dnf`` over a complete occurrence log."""
    index = {a: i for i, a in enumerate(log.atoms)}
    missing = [a for a in dnf.atoms() if a not in index]
    if missing:
        raise ValueError(f"{dnf.id}: log was harvested without {len(missing)} of its atoms")
    hs = HyperlabelSearch(dnf, index, budget)
    for a in hs.atom_ids:
        for occ in log.of(a):
            hs.feed(occ)
    hs.step()
    return hs.verdict()


def replay_witness(dnf: DNFHyperlabel, w: Witness) -> bool:
    """Does the witness satisfy its disjunct's guard?"""
    d = dnf.disjuncts[w.disjunct]
    if len(w.occurrences) != len(d.atoms):
        return False
    try:
        return eval_guard(d.psi, w.env)
    except Fault:
        return False
