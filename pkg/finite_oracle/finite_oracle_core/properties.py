"""finite_oracle/finite_oracle_core/properties.py - Structural properties checked on each random finite system.
INPUT: FiniteSystem, rng (for conjugacies) | OUTPUT: property name -> True / False / None (not applicable)

  equivalence          chain equivalence is reflexive, symmetric and transitive on CR
  partition            components partition CR and each is a maximal chain transitive set
  invariance           g(CR) and g(K) stay inside for every generator and component
  topo_implies_chain   topological transitivity of X implies chain transitivity
  duality              X \\ CR equals the union of B(A) \\ A for every alpha0
  conjugacy            CR, components and transitivity flags move with random state relabelings
"""
from itertools import product
from typing import Any, Dict, List, Optional

import numpy as np

from config.settings import CONJUGACY_TRIALS
from finite_oracle.finite_oracle_core.attractors import exact_duality
from finite_oracle.finite_oracle_core.chains import (ChainData, chain_data, dense_orbit_state,
    exact_chain_components, exact_chain_transitivity, exact_topological_transitivity, is_chain_transitive_subset,
    is_topologically_transitive_subset)
from finite_oracle.finite_oracle_core.finite_system import FiniteSystem, conjugate_system


def check_equivalence(data: ChainData) -> bool:
    cr = np.flatnonzero(data.cr)
    r = data.reach
    eq = r & r.T
    for a in cr:
        if not eq[a, a]: return False
    for a, b, c in product(cr, repeat=3):
        if eq[a, b] and eq[b, c] and not eq[a, c]: return False
    return True


def check_partition(sys: FiniteSystem, data: ChainData, comps: List[List[int]]) -> bool:
    cr = set(np.flatnonzero(data.cr).tolist())
    flat = [s for c in comps for s in c]
    if len(flat) != len(set(flat)) or set(flat) != cr: return False
    for c in comps:
        if not is_chain_transitive_subset(data, c): return False
        for extra in range(sys.n):
            if extra not in c and is_chain_transitive_subset(data, c + [extra]): return False
    return True


def check_invariance(sys: FiniteSystem, data: ChainData, comps: List[List[int]]) -> bool:
    cr = set(np.flatnonzero(data.cr).tolist())
    for g in sys.generators:
        if any(g[x] not in cr for x in cr): return False
        for c in comps:
            cs = set(c)
            if any(g[x] not in cs for x in c): return False
    return True


def check_topo_implies_chain(sys: FiniteSystem, data: ChainData) -> Optional[bool]:
    if not exact_topological_transitivity(sys, data): return None
    return exact_chain_transitivity(sys, data)


def _signature(sys: FiniteSystem) -> Dict[str, Any]:
    d = chain_data(sys)
    comps = exact_chain_components(sys, d)
    return {"cr": set(np.flatnonzero(d.cr).tolist()), "components": comps,
            "chain": exact_chain_transitivity(sys, d), "topo": exact_topological_transitivity(sys, d),
            "dense": dense_orbit_state(d) is not None,
            "topo_comps": [is_topologically_transitive_subset(d, c) for c in comps], "data": d}


def check_conjugacy(sys: FiniteSystem, rng: np.random.Generator, trials: int = CONJUGACY_TRIALS) -> bool:
    base = _signature(sys)
    for _ in range(trials):
        rho = rng.permutation(sys.n).tolist()
        other = _signature(conjugate_system(sys, rho))
        moved = sorted((sorted(rho[s] for s in c) for c in base["components"]), key=lambda c: c[0])
        if other["cr"] != {rho[s] for s in base["cr"]} or other["components"] != moved: return False
        if (other["chain"], other["topo"], other["dense"]) != (base["chain"], base["topo"], base["dense"]):
            return False
        for c, flag in zip(base["components"], base["topo_comps"]):
            if is_topologically_transitive_subset(other["data"], [rho[s] for s in c]) != flag: return False
    return True


def check_properties(sys: FiniteSystem, rng: np.random.Generator, data: Optional[ChainData] = None) -> tuple:
    """Returns (properties, duality report). Invariance and duality only bind abelian systems."""
    d = data if data is not None else chain_data(sys)
    comps = exact_chain_components(sys, d)
    dual = exact_duality(sys, d)
    props = {"equivalence": check_equivalence(d), "partition": check_partition(sys, d, comps),
             "invariance": check_invariance(sys, d, comps), "topo_implies_chain": check_topo_implies_chain(sys, d),
             "duality": dual["equal"], "conjugacy": check_conjugacy(sys, rng),
             "dense_orbit": dense_orbit_state(d) is not None}
    return props, dual
