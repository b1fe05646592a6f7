"""finite_oracle/finite_oracle.py - Public interface, exact semantics on finite metric systems."""
from finite_oracle.finite_oracle_core.attractors import (FiniteAttractor, FiniteAttractorSolver, exact_attractor,
    exact_basin, exact_duality, exact_omega)
from finite_oracle.finite_oracle_core.chains import (ChainData, chain_data, dense_orbit_state, exact_CR,
    exact_chain_components, exact_chain_transitivity, exact_topological_transitivity, exact_transitivity,
    is_chain_transitive_subset, is_topologically_transitive_subset)
from finite_oracle.finite_oracle_core.finite_system import (FiniteSystem, conjugate_system, load_system,
    random_system, save_system)
from finite_oracle.finite_oracle_core.monoid import MonoidClosure, monoid_closure
from finite_oracle.finite_oracle_core.properties import check_properties

__all__ = ["FiniteAttractor", "FiniteAttractorSolver", "exact_attractor", "exact_basin", "exact_duality",
           "exact_omega", "ChainData", "chain_data", "dense_orbit_state", "exact_CR", "exact_chain_components",
           "exact_chain_transitivity", "exact_topological_transitivity", "exact_transitivity",
           "is_chain_transitive_subset", "is_topologically_transitive_subset", "FiniteSystem", "conjugate_system", "load_system",
           "random_system", "save_system", "MonoidClosure", "monoid_closure", "check_properties"]
