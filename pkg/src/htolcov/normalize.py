"""Rewriting hyperlabels into disjunctive normal form.

A DNF hyperlabel is a list of guarded conjunctions ``<ls1 . ... . lsp | psi>``
where every ``lsi`` is an atomic label or a sequence.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .errors import DNFTooLarge
from .expr import TRUE, Expr, and_, meta_vars
from .htol.ast import Conj, Disj, Guard, Hyperlabel, Label, Leaf, Sequence, conj, disj

DEFAULT_DISJUNCT_CAP = 4096


@dataclass(frozen=True)
class GuardedConjunction:
    atoms: Tuple[Leaf, ...]
    psi: Expr = TRUE

    @property
    def names(self) -> List[str]:
        out: List[str] = []
        for a in self.atoms:
            out.extend(leaf_names(a))
        return out

    def guard_names(self) -> set:
        return meta_vars(self.psi)


@dataclass(frozen=True)
class DNFHyperlabel:
    id: str
    disjuncts: Tuple[GuardedConjunction, ...]

    def atoms(self) -> List[Leaf]:
        """Distinct atoms in first-appearance order."""
        seen = {}
        for d in self.disjuncts:
            for a in d.atoms:
                seen.setdefault(a, None)
        return list(seen)


def leaf_names(a: Leaf) -> List[str]:
    if isinstance(a, Label):
        return a.names
    return [n for lab in a.elems for n in lab.names]


def normalize_dnf(h: Hyperlabel, id: str = "", cap: int = DEFAULT_DISJUNCT_CAP) -> DNFHyperlabel:
    """Apply the rewriting rules bottom-up; ``cap`` bounds the disjunct count."""
    return DNFHyperlabel(id, tuple(_dnf(h, cap, id)))


def _dnf(h: Hyperlabel, cap: int, id: str) -> List[GuardedConjunction]:
    if isinstance(h, (Label, Sequence)):
        return [GuardedConjunction((h,), TRUE)]
    if isinstance(h, Guard):
        return [GuardedConjunction(d.atoms, and_(d.psi, h.psi)) for d in _dnf(h.body, cap, id)]
    if isinstance(h, Disj):
        out = _dnf(h.left, cap, id) + _dnf(h.right, cap, id)
    elif isinstance(h, Conj):
        left, right = _dnf(h.left, cap, id), _dnf(h.right, cap, id)
        if len(left) * len(right) > cap:
            raise DNFTooLarge(f"{id or 'hyperlabel'}: DNF has {len(left) * len(right)} "
                              f"disjuncts (cap {cap})")
        out = [GuardedConjunction(a.atoms + b.atoms, and_(a.psi, b.psi))
               for a in left for b in right]
    else:
        raise TypeError(f"not a hyperlabel: {h!r}")
    if len(out) > cap:
        raise DNFTooLarge(f"{id or 'hyperlabel'}: DNF has {len(out)} disjuncts (cap {cap})")
    return out


def to_hyperlabel(dnf: DNFHyperlabel) -> Hyperlabel:
    """The DNF as an ordinary hyperlabel term (sum of guarded products)."""
    terms = []
    for d in dnf.disjuncts:
        body = conj(*d.atoms)
        terms.append(body if d.psi == TRUE else Guard(body, d.psi))
    return disj(*terms)


def is_dnf(h: Hyperlabel) -> bool:
    """Is ``h`` already a sum of (optionally guarded) products of leaves?"""
    if isinstance(h, Disj):
        return is_dnf(h.left) and is_dnf(h.right)
    if isinstance(h, Guard):
        h = h.body
    return _is_product(h)


def _is_product(h: Hyperlabel) -> bool:
    if isinstance(h, (Label, Sequence)):
        return True
    return isinstance(h, Conj) and _is_product(h.left) and _is_product(h.right)
