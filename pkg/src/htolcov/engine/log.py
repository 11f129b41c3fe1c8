"""Occurrences harvested from runs."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Tuple

from ..expr import Value
from ..htol.ast import Leaf

EnvItems = Tuple[Tuple[str, Value], ...]


@dataclass(frozen=True)
class Occurrence:
    """One way an atom was covered: ``steps`` is ``(k,)`` for a label and
    ``(k1, ..., kn)`` for a sequence; ``env`` holds the recorded bindings."""

    atom: int
    test_id: str
    steps: Tuple[int, ...]
    env: EnvItems

    @property
    def env_dict(self) -> Dict[str, Value]:
        return dict(self.env)


@dataclass
class OccurrenceLog:
    """Atom index -> occurrences, in harvesting order.

    With ``dedup`` only the first occurrence of each (atom, env) is kept.
    """

    atoms: List[Leaf]
    dedup: bool = True
    occurrences: Dict[int, List[Occurrence]] = field(default_factory=dict)
    _seen: Dict[int, set] = field(default_factory=dict, repr=False)

    def add(self, occ: Occurrence) -> bool:
        """Store ``occ``; returns False when it duplicates a stored env."""
        if self.dedup:
            seen = self._seen.setdefault(occ.atom, set())
            if occ.env in seen:
                return False
            seen.add(occ.env)
        self.occurrences.setdefault(occ.atom, []).append(occ)
        return True

    def extend(self, occs: Iterable[Occurrence]) -> List[Occurrence]:
        return [o for o in occs if self.add(o)]

    def of(self, atom: int) -> List[Occurrence]:
        return self.occurrences.get(atom, [])

    def merge(self, other: "OccurrenceLog") -> "OccurrenceLog":
        """Union of two logs over the same atom table (``self`` first)."""
        if list(self.atoms) != list(other.atoms):
            raise ValueError("cannot merge logs over different atom tables")
        out = OccurrenceLog(list(self.atoms), self.dedup and other.dedup)
        for log in (self, other):
            for a in sorted(log.occurrences):
                out.extend(log.occurrences[a])
        return out

    def __len__(self) -> int:
        return sum(len(v) for v in self.occurrences.values())

    def test_ids(self) -> set:
        return {o.test_id for v in self.occurrences.values() for o in v}
