from .ast import (Conj, Disj, Guard, Hyperlabel, Label, Leaf, Objective, Sequence, conj, depth,
                  disj, labels_of, leaves, seq)
from .semantics import (check_scoping, check_well_formed, eval_bindings, eval_guard,
                        is_well_formed, visible_names)
from .syntax import meta_types, parse_htl, parse_hyperlabel, print_htl, print_hyperlabel

__all__ = [
    "Conj", "Disj", "Guard", "Hyperlabel", "Label", "Leaf", "Objective", "Sequence",
    "check_scoping", "check_well_formed", "conj", "depth", "disj", "eval_bindings",
    "eval_guard", "is_well_formed", "labels_of", "leaves", "meta_types", "parse_htl",
    "parse_hyperlabel", "print_htl", "print_hyperlabel", "seq", "visible_names",
]
