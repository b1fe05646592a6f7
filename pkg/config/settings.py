"""config/settings.py - All constants, single source of truth."""
from pathlib import Path
BASE_DIR = Path(__file__).parent.parent.resolve()
TOOL_NAME = "chain-scout"
TOOL_VERSION = "1.0.0"

# ── Grid limits ──
MAX_DEPTH = 16
MAX_RASTER_CELLS = 1 << 24
CELL_SNAP_TOL = 1e-9

# ── Word enumeration ──
MAX_WORD_LEN = 10
MAX_WORDS = 1_000_000
MAX_BOX_EVALS = 100_000_000
DEFAULT_L = 3
DEFAULT_G_LEN = 2
DEFAULT_H_SEARCH_LEN = 2

# ── Abelian evidence ──
ABELIAN_TOL = 1e-9
ABELIAN_SAMPLES = 1000

# ── Chain engine ──
HUB_MIN_CELLS = 64           # enclosures covering more cells go through dyadic hubs
MAX_GRAPH_EDGES = 200_000_000
EXPORT_EDGES_MAX_CELLS = 4096
TRANSITIVITY_MAX_CELLS = 1 << 14
TRANSITIVITY_SAMPLES = 4     # k×k point lattice per cell for sampled oracles

# ── Attractor engine ──
DEFAULT_M_MAX = 64
DEFAULT_DEPTH_M = 8
DUALITY_LAYER_CELLS = 2
DEFAULT_SUBLEVEL_RADII = (0.3, 0.5, 0.7)

# ── Finite oracle ──
MAX_ORACLE_STATES = 8
MAX_CLOSURE = 1_000_000
DEFAULT_SWEEP_SEEDS = 200
DEFAULT_SWEEP_N_MAX = 6
DEFAULT_SWEEP_MAX_GENERATORS = 3
CONJUGACY_TRIALS = 5

# ── Exit codes ──
EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BUDGET = 3
EXIT_INVARIANT = 4

# ── Certificate outcomes ──
CERTIFIED = "certified"
REJECTED = "rejected"
SKIPPED = "skipped"
PASS = "PASS"
FAIL = "FAIL"
UNASSERTED = "UNASSERTED"
