"""finite_oracle/finite_oracle_core/chains.py - Exact chain recurrence and transitivity on finite systems.
INPUT: FiniteSystem (+ its MonoidClosure) | OUTPUT: CR states, chain components, transitivity flags

With every eps below the smallest positive distance an (eps, g)-chain step is
exact: x -> f(g(x)) for some f in G-hat. So for each g in the closure the step
graph is y -> Ob(g(y)) and chain reachability is the intersection over g of
the transitive closures (paths of length >= 1).
"""
from dataclasses import dataclass
from typing import List, Optional, Sequence

import networkx as nx
import numpy as np

from finite_oracle.finite_oracle_core.finite_system import FiniteSystem
from finite_oracle.finite_oracle_core.monoid import MonoidClosure, monoid_closure


@dataclass
class ChainData:
    """orbit[z, w]: w in Ob(z). reach[x, y]: x chains to y for every eps and every g in the closure."""
    sys: FiniteSystem
    closure: MonoidClosure
    orbit: np.ndarray
    reach: np.ndarray

    @property
    def cr(self) -> np.ndarray: return np.diag(self.reach).copy()


def orbit_matrix(closure: MonoidClosure) -> np.ndarray:
    n = closure.n
    hat = closure.with_identity()
    o = np.zeros((n, n), dtype=bool)
    o[np.repeat(np.arange(n)[None, :], hat.shape[0], axis=0), hat] = True
    return o


def _step_closures(tables: np.ndarray, orbit: np.ndarray) -> np.ndarray:
    """Transitive closures of y -> Ob(m(y)) for every table m, vectorized over the closure (Warshall)."""
    r = orbit[tables]                                   # (M, n, n)
    for k in range(tables.shape[1]):
        r = r | (r[:, :, k, None] & r[:, None, k, :])
    return r


def chain_data(sys: FiniteSystem, closure: Optional[MonoidClosure] = None) -> ChainData:
    cl = closure if closure is not None else monoid_closure(sys)
    orbit = orbit_matrix(cl)
    reach = np.logical_and.reduce(_step_closures(cl.tables, orbit), axis=0)
    return ChainData(sys, cl, orbit, reach)


def exact_CR(sys: FiniteSystem, data: Optional[ChainData] = None) -> List[int]:
    d = data if data is not None else chain_data(sys)
    return np.flatnonzero(d.cr).tolist()


def exact_chain_components(sys: FiniteSystem, data: Optional[ChainData] = None) -> List[List[int]]:
    """Mutual chain reachability classes on CR, sorted by smallest state."""
    d = data if data is not None else chain_data(sys)
    cr = np.flatnonzero(d.cr).tolist()
    g = nx.DiGraph()
    g.add_nodes_from(cr)
    g.add_edges_from((a, b) for a in cr for b in cr if a != b and d.reach[a, b])
    return sorted((sorted(c) for c in nx.strongly_connected_components(g)), key=lambda c: c[0])


def is_chain_transitive_subset(data: ChainData, states: Sequence[int]) -> bool:
    s = list(states)
    if not s: return False
    return bool(data.reach[np.ix_(s, s)].all())


def exact_chain_transitivity(sys: FiniteSystem, data: Optional[ChainData] = None) -> bool:
    d = data if data is not None else chain_data(sys)
    return is_chain_transitive_subset(d, range(sys.n))


def is_topologically_transitive_subset(data: ChainData, states: Sequence[int]) -> bool:
    """Every u in S reaches every v in S under some map of G-hat (open sets are singletons)."""
    s = list(states)
    if not s: return False
    return bool(data.orbit[np.ix_(s, s)].all())


def exact_topological_transitivity(sys: FiniteSystem, data: Optional[ChainData] = None) -> bool:
    d = data if data is not None else chain_data(sys)
    return is_topologically_transitive_subset(d, range(sys.n))


def dense_orbit_state(data: ChainData) -> Optional[int]:
    full = np.flatnonzero(data.orbit.all(axis=1))
    return int(full[0]) if full.size else None


def exact_transitivity(sys: FiniteSystem, data: Optional[ChainData] = None) -> dict:
    d = data if data is not None else chain_data(sys)
    return {"topological": exact_topological_transitivity(sys, d), "chain": exact_chain_transitivity(sys, d),
            "dense_orbit": dense_orbit_state(d)}
