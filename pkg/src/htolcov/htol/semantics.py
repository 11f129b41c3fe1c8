"""Visible names, well-formedness, and evaluation of bindings and guards."""
from __future__ import annotations

from typing import Dict, FrozenSet, List, Mapping

from ..expr import Expr, Value, evaluate, meta_vars
from .ast import Conj, Disj, Guard, Hyperlabel, Label, Sequence

Environment = Dict[str, Value]


def visible_names(h: Hyperlabel) -> FrozenSet[str]:
    """Metavariables guaranteed to be recorded when ``h`` is covered."""
    if isinstance(h, Label):
        return frozenset(h.names)
    if isinstance(h, Sequence):
        return frozenset().union(*(visible_names(l) for l in h.elems))
    if isinstance(h, Guard):
        return visible_names(h.body)
    if isinstance(h, Conj):
        return visible_names(h.left) | visible_names(h.right)
    if isinstance(h, Disj):
        return visible_names(h.left) & visible_names(h.right)
    raise TypeError(f"not a hyperlabel: {h!r}")


def check_well_formed(h: Hyperlabel) -> List[str]:
    """Violations of the well-formedness rules; an empty list means ok."""
    out: List[str] = []
    _wf(h, out)
    return out


def is_well_formed(h: Hyperlabel) -> bool:
    return not check_well_formed(h)


def _fmt(names) -> str:
    return "{" + ", ".join(sorted(names)) + "}"


def _wf(h: Hyperlabel, out: List[str]) -> None:
    if isinstance(h, Label):
        names = h.names
        dup = {n for n in names if names.count(n) > 1}
        if dup:
            out.append(f"label at loc{h.loc}: name {_fmt(dup)} bound twice")
    elif isinstance(h, Sequence):
        for lab in h.elems:
            _wf(lab, out)
        nms = [visible_names(l) for l in h.elems]
        for i in range(len(nms)):
            for j in range(i + 1, len(nms)):
                shared = nms[i] & nms[j]
                if shared:
                    out.append(f"sequence: elements {i + 1} and {j + 1} both bind {_fmt(shared)}")
    elif isinstance(h, Guard):
        _wf(h.body, out)
    elif isinstance(h, Conj):
        _wf(h.left, out)
        _wf(h.right, out)
        shared = visible_names(h.left) & visible_names(h.right)
        if shared:
            out.append(f"conjunction: {_fmt(shared)} bound on both sides")
    elif isinstance(h, Disj):
        _wf(h.left, out)
        _wf(h.right, out)
        a, b = visible_names(h.left), visible_names(h.right)
        if a != b:
            out.append(f"disjunction: operands bind {_fmt(a)} and {_fmt(b)}")
    else:
        raise TypeError(f"not a hyperlabel: {h!r}")


def check_scoping(h: Hyperlabel) -> List[str]:
    """Guards may only read visible names; path predicates only names bound
    by earlier sequence elements."""
    out: List[str] = []

    def go(n: Hyperlabel) -> None:
        if isinstance(n, Guard):
            extra = meta_vars(n.psi) - visible_names(n.body)
            if extra:
                out.append(f"guard reads {_fmt(extra)}, not visible in its hyperlabel")
            go(n.body)
        elif isinstance(n, Sequence):
            seen: set = set()
            for i, phi in enumerate(n.path_preds):
                seen |= set(n.elems[i].names)
                extra = meta_vars(phi) - seen
                if extra:
                    out.append(f"path predicate {i + 1} reads {_fmt(extra)} before it is bound")
        elif isinstance(n, (Conj, Disj)):
            go(n.left)
            go(n.right)

    go(h)
    return out


def eval_bindings(bindings, state: Mapping[str, Value]) -> Environment:
    """Evaluate ``{v <- e; ...}`` in ``state``; a failing expression raises
    :class:`~htolcov.expr.Fault`."""
    return {name: evaluate(e, state) for name, e in bindings}


def eval_guard(psi: Expr, env: Mapping[str, Value]) -> bool:
    missing = meta_vars(psi) - set(env)
    if missing:
        raise ValueError(f"guard evaluated without {_fmt(missing)}")
    return bool(evaluate(psi, {}, env))
