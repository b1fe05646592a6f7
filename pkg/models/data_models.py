"""models/data_models.py - Scenario, certificates, attractor records, report fragments."""
from dataclasses import dataclass, field, asdict
from typing import Any, Dict, List, Optional

from config.settings import CERTIFIED, REJECTED
from grid_space.grid_space_core.box_set import BoxSet
from semigroup.semigroup_core.words import Word, format_word

@dataclass
class Scenario:
    name: str = "scenario"; bounds: List[float] = field(default_factory=lambda: [-1.125, 1.125, -1.125, 1.125])
    membership: Any = None; generators: List[str] = field(default_factory=list); abelian_claimed: bool = False
    depth: int = 6; eps_schedule: List[float] = field(default_factory=lambda: [0.1, 0.05, 0.02])
    g_schedule: Any = "all:2"; L: int = 3; alpha0: List[int] = field(default_factory=lambda: [0])
    m_max: int = 64; depth_m: int = 8
    trapping_candidates: List[dict] = field(default_factory=list)
    sublevel_radii: List[float] = field(default_factory=list)
    reachable_seeds: List[List[float]] = field(default_factory=list)
    h_search_len: int = 2; transitivity_budget: int = 0; export_edges: bool = False
    output_dir: str = "out"; threads: int = 1; seed: int = 0
    def to_dict(self): return asdict(self)
    def echo(self):
        """Hashed part: everything that changes results (not threads, not output_dir)."""
        d = self.to_dict(); d.pop("threads", None); d.pop("output_dir", None); return d

@dataclass
class TrappingCertificate:
    U: BoxSet; h: Word; L: int; image_set: BoxSet
    accepted: bool = False; violating_cell: Optional[int] = None; spill: int = 0; escaped: int = 0
    label: str = ""; kind: str = ""
    @property
    def status(self): return CERTIFIED if self.accepted else REJECTED
    def summary(self) -> dict:
        g = self.U.grid; vc = None
        if self.violating_cell is not None: vc = [int(g.ix[self.violating_cell]), int(g.iy[self.violating_cell])]
        return {"label": self.label, "kind": self.kind, "status": self.status, "h": format_word(self.h),
                "L": self.L, "U_cells": len(self.U), "image_cells": len(self.image_set),
                "violating_cell": vc, "spill": self.spill, "escaped": self.escaped}

@dataclass
class AttractorRecord:
    A: BoxSet; source: TrappingCertificate; alpha0: int
    basin: Optional[BoxSet] = None; stabilized: bool = False; m_used: int = 0
    cycle_length: int = 0
    def summary(self) -> dict:
        return {"certificate": {"label": self.source.label, "U_cells": len(self.source.U),
                                "h": format_word(self.source.h), "L": self.source.L},
                "alpha0": self.alpha0, "A_cells": len(self.A),
                "basin_cells": None if self.basin is None else len(self.basin),
                "stabilized": self.stabilized, "m_used": self.m_used, "cycle_length": self.cycle_length}

@dataclass
class DualityReport:
    verdict: str = ""; abelian: bool = False; attractors: int = 0
    complement_cells: int = 0; union_cells: int = 0; sym_diff_cells: int = 0
    max_boundary_distance: float = 0.0; layer_cells: int = 2
    def to_dict(self): return asdict(self)

@dataclass
class StageTiming:
    stage: str = ""; seconds: float = 0.0
    def to_dict(self): return asdict(self)

@dataclass
class AnalysisReport:
    tool: str = ""; version: str = ""; config_hash: str = ""; scenario: Dict = field(default_factory=dict)
    abelian: Dict = field(default_factory=dict); cr: Optional[Dict] = None; components: Optional[Dict] = None
    certificates: List[Dict] = field(default_factory=list); attractors: List[Dict] = field(default_factory=list)
    alpha0_disagreement: List[str] = field(default_factory=list)
    duality: Optional[Dict] = None; transitivity: Optional[Dict] = None
    artifacts: List[str] = field(default_factory=list)
    def to_dict(self): return asdict(self)

@dataclass
class SweepRecord:
    seed: int = 0; n: int = 0; generators: int = 0; abelian: bool = False; closure_size: int = 0
    system: Dict[str, Any] = field(default_factory=dict)
    properties: Dict[str, Any] = field(default_factory=dict); duality: Dict[str, Any] = field(default_factory=dict)
    error: str = ""
    def to_dict(self): return asdict(self)
