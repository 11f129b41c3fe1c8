"""Seeded random test suites over an entry function's signature."""
from __future__ import annotations

import random
from types import MappingProxyType
from typing import Tuple

from .expr import BOOL, INT, ArrayType
from .minilang.program import LocatedProgram
from .trace import TestDatum, TestSuite

INT_RANGE = (-100, 100)


def random_suite(p: LocatedProgram, n: int, seed: int = 0,
                 int_range: Tuple[int, int] = INT_RANGE, prefix: str = "t") -> TestSuite:
    """``n`` tests drawn uniformly: ints and array cells in ``int_range``, bools fair."""
    rng = random.Random(seed)
    lo, hi = int_range
    params = p.entry_function.params
    width = len(str(max(n - 1, 0)))
    tests = []
    for i in range(n):
        values = {}
        for prm in params:
            if prm.type == INT:
                values[prm.name] = rng.randint(lo, hi)
            elif prm.type == BOOL:
                values[prm.name] = rng.random() < 0.5
            elif isinstance(prm.type, ArrayType):
                values[prm.name] = tuple(rng.randint(lo, hi) for _ in range(prm.type.size))
            else:
                raise TypeError(f"unsupported parameter type {prm.type}")
        tests.append(TestDatum(f"{prefix}{i:0{width}d}", MappingProxyType(values)))
    return TestSuite(tuple(tests))
