"""chain_engine/chain_engine.py - Public interface, re-exports step graphs, CR and transitivity."""
from chain_engine.chain_engine_core.recurrence import (ChainComponents, CRAnalysis, analyze_chains, approx_CR,
    chain_components, components_chain_transitive, invariance_defects, invariance_gaps, is_chain_transitive,
    is_chain_transitive_on, validate_schedules)
from chain_engine.chain_engine_core.step_graph import (StepGraph, build_step_graph, chain_reachable,
    chain_recurrent_cells, export_rows, spread_offsets)
from chain_engine.chain_engine_core.transitivity import TransitivityReport, is_topologically_transitive

__all__ = ["ChainComponents", "CRAnalysis", "analyze_chains", "approx_CR", "chain_components",
           "components_chain_transitive", "invariance_defects", "invariance_gaps", "is_chain_transitive",
           "is_chain_transitive_on", "validate_schedules", "StepGraph", "build_step_graph", "chain_reachable",
           "chain_recurrent_cells", "export_rows", "spread_offsets", "TransitivityReport", "is_topologically_transitive"]
