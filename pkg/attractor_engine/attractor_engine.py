"""attractor_engine/attractor_engine.py - Public interface, re-exports trapping, attractor and duality operations."""
from attractor_engine.attractor_engine_core.attractor import (basin, compute_attractor, invariance_defect_cells,
    omega_limit_cells)
from attractor_engine.attractor_engine_core.duality import (basin_minus_attractor_union, duality_raster,
    duality_report)
from attractor_engine.attractor_engine_core.image_operator import (ImageResult, generator_relation,
    generator_relations, image_of)
from attractor_engine.attractor_engine_core.trapping import (certify_trapping, find_certificate,
    gather_candidates, reachable_candidate, region_candidate)

__all__ = ["basin", "compute_attractor", "invariance_defect_cells", "omega_limit_cells",
           "basin_minus_attractor_union", "duality_raster", "duality_report", "ImageResult",
           "generator_relation", "generator_relations", "image_of", "certify_trapping", "find_certificate",
           "gather_candidates", "reachable_candidate", "region_candidate"]
