"""Hyperlabel syntax tree."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Tuple, Union

from ..expr import TRUE, Expr

Binding = Tuple[str, Expr]


@dataclass(frozen=True)
class Label:
    """Atomic label ``(loc, pred)`` with bindings ``{name <- expr; ...}``."""

    loc: int
    pred: Expr = TRUE
    bindings: Tuple[Binding, ...] = ()

    @property
    def names(self) -> List[str]:
        return [n for n, _ in self.bindings]


@dataclass(frozen=True)
class Sequence:
    """``[l1 ->(phi1) l2 ... ln]``; ``path_preds[i]`` sits between elems i and i+1."""

    elems: Tuple[Label, ...]
    path_preds: Tuple[Expr, ...]

    def __post_init__(self):
        if len(self.elems) < 2:
            raise ValueError("a sequence needs at least two labels")
        if len(self.path_preds) != len(self.elems) - 1:
            raise ValueError("a sequence needs one path predicate per arrow")


@dataclass(frozen=True)
class Guard:
    body: "Hyperlabel"
    psi: Expr


@dataclass(frozen=True)
class Conj:
    left: "Hyperlabel"
    right: "Hyperlabel"


@dataclass(frozen=True)
class Disj:
    left: "Hyperlabel"
    right: "Hyperlabel"


Hyperlabel = Union[Label, Sequence, Guard, Conj, Disj]
Leaf = Union[Label, Sequence]


@dataclass(frozen=True)
class Objective:
    """A named hyperlabel, as listed in an annotated program or ``.htl`` file."""

    id: str
    h: Hyperlabel
    criterion: str = ""
    origin: str = ""


def seq(*parts) -> Sequence:
    """Build a sequence from alternating labels and path predicates."""
    elems = parts[0::2]
    preds = parts[1::2]
    return Sequence(tuple(elems), tuple(preds))


def conj(*hs: Hyperlabel) -> Hyperlabel:
    out = hs[0]
    for h in hs[1:]:
        out = Conj(out, h)
    return out


def disj(*hs: Hyperlabel) -> Hyperlabel:
    out = hs[0]
    for h in hs[1:]:
        out = Disj(out, h)
    return out


def leaves(h: Hyperlabel) -> Iterator[Leaf]:
    if isinstance(h, (Label, Sequence)):
        yield h
    elif isinstance(h, Guard):
        yield from leaves(h.body)
    else:
        yield from leaves(h.left)
        yield from leaves(h.right)


def labels_of(h: Hyperlabel) -> Iterator[Label]:
    for leaf in leaves(h):
        if isinstance(leaf, Label):
            yield leaf
        else:
            yield from leaf.elems


def depth(h: Hyperlabel) -> int:
    if isinstance(h, (Label, Sequence)):
        return 0
    if isinstance(h, Guard):
        return 1 + depth(h.body)
    return 1 + max(depth(h.left), depth(h.right))


def bound_names(h: Hyperlabel) -> List[str]:
    """Every binding name in ``h``, with repetitions."""
    return [n for lab in labels_of(h) for n in lab.names]
