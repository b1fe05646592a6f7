"""finite_oracle/finite_oracle_core/monoid.py - Transformation-monoid closure of generator tables."""
from collections import deque
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from config.settings import MAX_CLOSURE, MAX_ORACLE_STATES
from finite_oracle.finite_oracle_core.finite_system import FiniteSystem
from utils.budget import check_cap
from utils.errors import PreconditionError


@dataclass(frozen=True)
class MonoidClosure:
    """Distinct composites of the generators (G itself). G-hat adds the identity on top."""
    n: int
    elements: Tuple[Tuple[int, ...], ...]

    @property
    def size(self) -> int: return len(self.elements)

    @property
    def tables(self) -> np.ndarray: return np.array(self.elements, dtype=np.int64).reshape(-1, self.n)

    @property
    def identity(self) -> Tuple[int, ...]: return tuple(range(self.n))

    @property
    def contains_identity(self) -> bool: return self.identity in set(self.elements)

    def with_identity(self) -> np.ndarray:
        """Tables of G-hat: the explicit identity first, then G (identity may repeat)."""
        return np.vstack([np.arange(self.n, dtype=np.int64)[None, :], self.tables])


def monoid_closure(sys: FiniteSystem, limit: int = MAX_CLOSURE) -> MonoidClosure:
    """Breadth-first closure: pop m, append g o m for each generator g in order."""
    if sys.n > MAX_ORACLE_STATES: raise PreconditionError(f"n must be <= {MAX_ORACLE_STATES}, got {sys.n}")
    seen, order, queue = set(), [], deque()
    for g in sys.generators:
        if g not in seen: seen.add(g); order.append(g); queue.append(g)
    while queue:
        m = queue.popleft()
        for g in sys.generators:
            c = tuple(g[x] for x in m)
            if c in seen: continue
            seen.add(c); order.append(c); queue.append(c)
            check_cap("monoid closure size", len(order), limit)
    return MonoidClosure(sys.n, tuple(order))
