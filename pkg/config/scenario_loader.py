"""config/scenario_loader.py - Scenario JSON loading and validation.
INPUT: JSON file / dict / preset name | OUTPUT: Scenario, ResolvedScenario (grid + parsed system + g words)

Every validation failure is a ConfigError naming the offending field.
"""
import json
import math
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, List, Optional

from config.scenarios import PRESETS
from config.settings import MAX_DEPTH, MAX_WORD_LEN
from grid_space.grid_space_core.grid import Grid
from grid_space.grid_space_core.regions import region_from_spec
from map_expr.map_expr_core.interval import IntervalBox2
from models.data_models import Scenario
from semigroup.semigroup_core.generator_system import GeneratorSystem
from semigroup.semigroup_core.words import Word, expand_schedule, parse_word
from utils.errors import ConfigError

_FIELDS = {f.name for f in fields(Scenario)}


def _int(v: Any, field: str, lo: Optional[int] = None, hi: Optional[int] = None) -> int:
    if isinstance(v, bool) or not isinstance(v, int): raise ConfigError(f"expected an integer, got {v!r}", field)
    if lo is not None and v < lo: raise ConfigError(f"must be >= {lo}, got {v}", field)
    if hi is not None and v > hi: raise ConfigError(f"must be <= {hi}, got {v}", field)
    return v


def _float(v: Any, field: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ConfigError(f"expected a finite number, got {v!r}", field)
    return float(v)


def _list(v: Any, field: str, nonempty: bool = False) -> list:
    if not isinstance(v, list): raise ConfigError(f"expected a list, got {type(v).__name__}", field)
    if nonempty and not v: raise ConfigError("must be nonempty", field)
    return v


def validate_scenario(s: Scenario) -> Scenario:
    if not isinstance(s.name, str) or not s.name: raise ConfigError("must be a nonempty string", "name")
    b = [_float(v, f"bounds[{k}]") for k, v in enumerate(_list(s.bounds, "bounds"))]
    if len(b) != 4 or b[0] >= b[1] or b[2] >= b[3]:
        raise ConfigError("expected [x0, x1, y0, y1] with x0 < x1 and y0 < y1", "bounds")
    s.bounds = b
    region_from_spec(s.membership, b, "membership")
    gens = _list(s.generators, "generators", nonempty=True)
    for k, g in enumerate(gens):
        if not isinstance(g, str): raise ConfigError("generator must be an expression string", f"generators[{k}]")
    if not isinstance(s.abelian_claimed, bool): raise ConfigError("expected true or false", "abelian_claimed")
    _int(s.depth, "depth", 0, MAX_DEPTH)
    eps = [_float(v, f"eps_schedule[{k}]") for k, v in enumerate(_list(s.eps_schedule, "eps_schedule", True))]
    if any(e <= 0 for e in eps): raise ConfigError("values must be > 0", "eps_schedule")
    if any(a <= b for a, b in zip(eps, eps[1:])): raise ConfigError("must be strictly decreasing", "eps_schedule")
    s.eps_schedule = eps
    _int(s.L, "L", 1, MAX_WORD_LEN)
    alpha = _list(s.alpha0, "alpha0", nonempty=True)
    for k, a in enumerate(alpha): _int(a, f"alpha0[{k}]", 0, len(gens) - 1)
    _int(s.m_max, "m_max", 1)
    _int(s.depth_m, "depth_m", 1)
    for k, c in enumerate(_list(s.trapping_candidates, "trapping_candidates")):
        if not isinstance(c, dict) or "kind" not in c:
            raise ConfigError("candidate must be an object with 'kind'", f"trapping_candidates[{k}]")
    s.sublevel_radii = [_float(r, f"sublevel_radii[{k}]") for k, r in enumerate(_list(s.sublevel_radii, "sublevel_radii"))]
    if any(r <= 0 for r in s.sublevel_radii): raise ConfigError("radii must be > 0", "sublevel_radii")
    for k, p in enumerate(_list(s.reachable_seeds, "reachable_seeds")):
        if not isinstance(p, list) or len(p) != 2: raise ConfigError("seed must be [x, y]", f"reachable_seeds[{k}]")
        _float(p[0], f"reachable_seeds[{k}]"); _float(p[1], f"reachable_seeds[{k}]")
    _int(s.h_search_len, "h_search_len", 1, MAX_WORD_LEN)
    _int(s.transitivity_budget, "transitivity_budget", 0, MAX_WORD_LEN)
    if not isinstance(s.export_edges, bool): raise ConfigError("expected true or false", "export_edges")
    if not isinstance(s.output_dir, str) or not s.output_dir: raise ConfigError("must be a nonempty string", "output_dir")
    _int(s.threads, "threads", 1)
    _int(s.seed, "seed", 0)
    return s


def scenario_from_dict(d: dict) -> Scenario:
    """Merges the given keys over the Scenario defaults; unknown keys are rejected."""
    if not isinstance(d, dict): raise ConfigError("scenario must be a JSON object")
    unknown = sorted(set(d) - _FIELDS)
    if unknown: raise ConfigError(f"unknown scenario key(s): {', '.join(unknown)}", unknown[0])
    return validate_scenario(Scenario(**d))


def load_scenario(path: Path) -> Scenario:
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f: d = json.load(f)
    except FileNotFoundError as exc: raise ConfigError(f"scenario file not found: {path}", "scenario") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON at line {exc.lineno} column {exc.colno}", "scenario") from exc
    return scenario_from_dict(d)


def preset_scenario(name: str, **overrides) -> Scenario:
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r} (known: {', '.join(sorted(PRESETS))})", "preset")
    d = json.loads(json.dumps(PRESETS[name]))
    d.update(overrides)
    return scenario_from_dict(d)


@dataclass
class ResolvedScenario:
    scenario: Scenario
    grid: Grid
    system: GeneratorSystem
    g_words: List[Word]

    @property
    def bounds(self) -> IntervalBox2: return self.grid.bounds


def resolve_scenario(s: Scenario) -> ResolvedScenario:
    """Parses the generators and builds the grid; expression errors name generators[k]."""
    system = GeneratorSystem.from_sources(s.generators, s.abelian_claimed)
    words = expand_schedule(s.g_schedule, system.n, "g_schedule")
    for k, c in enumerate(s.trapping_candidates):
        if "h" in c and parse_word(c["h"], system.n, f"trapping_candidates[{k}].h").is_identity:
            raise ConfigError("h must be a nonempty word", f"trapping_candidates[{k}].h")
    bounds = IntervalBox2.from_sequence(s.bounds)
    grid = Grid(bounds, s.depth, region_from_spec(s.membership, s.bounds, "membership"))
    return ResolvedScenario(s, grid, system, words)
