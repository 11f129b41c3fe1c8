from .callgraph import CallGraph, build_callgraph
from .cfg import CFG, EXIT, Edge, FunctionCFG, build_cfg
from .defuse import DefUseInfo, DuPair, VarRef, compute_def_use
from .parser import parse_program
from .printer import print_program
from .program import LocatedProgram, LocationInfo

__all__ = [
    "CFG", "CallGraph", "DefUseInfo", "DuPair", "EXIT", "Edge", "FunctionCFG",
    "LocatedProgram", "LocationInfo", "VarRef", "build_callgraph", "build_cfg",
    "compute_def_use", "parse_program", "print_program",
]
