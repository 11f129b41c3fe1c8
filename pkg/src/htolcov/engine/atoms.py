"""Atom table shared by harvesting and consolidation."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence as Seq, Tuple

from ..htol.ast import Label, Leaf
from ..normalize import DNFHyperlabel, leaf_names


@dataclass
class AtomTable:
    """Distinct atoms of a set of DNF hyperlabels.

    ``relevant[i]`` are the names of atom ``i`` that some guard reads; with
    pruning on, only those are kept in recorded environments.
    """

    atoms: List[Leaf]
    index: Dict[Leaf, int]
    relevant: List[Tuple[str, ...]]

    @classmethod
    def build(cls, dnfs: Seq[DNFHyperlabel], prune: bool = True) -> "AtomTable":
        atoms: List[Leaf] = []
        index: Dict[Leaf, int] = {}
        used: List[set] = []
        for dnf in dnfs:
            for d in dnf.disjuncts:
                gnames = d.guard_names()
                for a in d.atoms:
                    i = index.get(a)
                    if i is None:
                        i = index[a] = len(atoms)
                        atoms.append(a)
                        used.append(set())
                    used[i] |= gnames
        relevant = []
        for a, u in zip(atoms, used):
            names = leaf_names(a)
            relevant.append(tuple(sorted(n for n in names if not prune or n in u)))
        return cls(atoms, index, relevant)

    def __len__(self) -> int:
        return len(self.atoms)

    def locations(self, i: int) -> List[int]:
        a = self.atoms[i]
        return [a.loc] if isinstance(a, Label) else [l.loc for l in a.elems]
