"""finite_oracle/finite_oracle_core/finite_system.py - Finite metric spaces with table maps.
INPUT: n, distance table, generator tables (or a seeded rng) | OUTPUT: validated FiniteSystem

File format: JSON {"n": 3, "dist": [[...], ...], "generators": [[...], ...]}.
"""
from dataclasses import dataclass
from pathlib import Path
from typing import List, Sequence, Tuple

import numpy as np

from utils.canonical_json import read_json, write_json
from utils.errors import ConfigError, PreconditionError

METRIC_TOL = 1e-9


@dataclass(frozen=True)
class FiniteSystem:
    n: int
    dist: Tuple[Tuple[float, ...], ...]
    generators: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "dist", tuple(tuple(float(v) for v in row) for row in self.dist))
        object.__setattr__(self, "generators", tuple(tuple(int(v) for v in g) for g in self.generators))
        n = self.n
        if n < 1: raise ConfigError("n must be >= 1", "n")
        d = np.array(self.dist, dtype=float)
        if d.shape != (n, n): raise ConfigError(f"dist must be {n}x{n}", "dist")
        if np.any(d < 0) or np.any(np.diag(d) != 0): raise ConfigError("dist must be nonnegative with zero diagonal", "dist")
        if not np.allclose(d, d.T, atol=METRIC_TOL): raise ConfigError("dist must be symmetric", "dist")
        if n > 1 and np.any(d[~np.eye(n, dtype=bool)] <= 0): raise ConfigError("distinct states need positive distance", "dist")
        if np.any(d[:, :, None] > d[:, None, :] + d.T[None, :, :] + METRIC_TOL):
            raise ConfigError("dist violates the triangle inequality", "dist")
        if not self.generators: raise ConfigError("at least one generator table is required", "generators")
        for k, g in enumerate(self.generators):
            if len(g) != n or any(v < 0 or v >= n for v in g):
                raise ConfigError(f"table must map 0..{n - 1} into itself", f"generators[{k}]")

    @property
    def k(self) -> int: return len(self.generators)

    @property
    def dist_array(self) -> np.ndarray: return np.array(self.dist, dtype=float)

    @property
    def tables(self) -> np.ndarray: return np.array(self.generators, dtype=np.int64)

    @property
    def min_positive_distance(self) -> float:
        d = self.dist_array
        pos = d[d > 0]
        return float(pos.min()) if pos.size else float("inf")

    def is_abelian(self) -> bool:
        """Exact pairwise commutation of the tables."""
        t = self.tables
        for i in range(self.k):
            for j in range(i + 1, self.k):
                if not np.array_equal(t[i][t[j]], t[j][t[i]]): return False
        return True

    def to_dict(self) -> dict:
        return {"n": self.n, "dist": [list(r) for r in self.dist], "generators": [list(g) for g in self.generators]}

    @classmethod
    def from_dict(cls, d: dict) -> "FiniteSystem":
        try: return cls(int(d["n"]), d["dist"], d["generators"])
        except (KeyError, TypeError, ValueError) as exc: raise ConfigError(f"malformed finite system: {exc}") from exc


def save_system(path: Path, sys: FiniteSystem): write_json(path, sys.to_dict())


def load_system(path: Path) -> FiniteSystem: return FiniteSystem.from_dict(read_json(path))


def plane_metric(rng: np.random.Generator, n: int, span: int = 10) -> List[List[float]]:
    """Distances between n distinct random integer points of the plane."""
    pts = set()
    while len(pts) < n:
        pts.add((int(rng.integers(0, span + 1)), int(rng.integers(0, span + 1))))
    p = np.array(sorted(pts), dtype=float)
    p = p[rng.permutation(n)]
    d = np.hypot(p[:, None, 0] - p[None, :, 0], p[:, None, 1] - p[None, :, 1])
    return d.tolist()


def _power(t: np.ndarray, e: int) -> np.ndarray:
    out = np.arange(t.size)
    for _ in range(e): out = t[out]
    return out


def random_system(rng: np.random.Generator, n: int, k: int, abelian: bool) -> FiniteSystem:
    """Abelian systems: powers of one random map, sometimes with a constant map onto one of its fixed points."""
    dist = plane_metric(rng, n)
    if not abelian:
        return FiniteSystem(n, dist, [rng.integers(0, n, n).tolist() for _ in range(k)])
    f = rng.integers(0, n, n)
    gens = [_power(f, int(rng.integers(1, n + 1))).tolist() for _ in range(k)]
    fixed = np.flatnonzero(f == np.arange(n))
    if k > 1 and fixed.size and rng.random() < 0.3:
        gens[-1] = [int(rng.choice(fixed))] * n
    return FiniteSystem(n, dist, gens)


def conjugate_system(sys: FiniteSystem, rho: Sequence[int]) -> FiniteSystem:
    """g~ = rho o g o rho^-1 and dist'(rho x, rho y) = dist(x, y)."""
    rho = [int(v) for v in rho]
    if sorted(rho) != list(range(sys.n)): raise PreconditionError(f"rho is not a bijection of 0..{sys.n - 1}")
    r = np.array(rho)
    d = np.empty((sys.n, sys.n))
    d[np.ix_(r, r)] = sys.dist_array
    gens = []
    for g in sys.tables:
        t = np.empty(sys.n, dtype=np.int64); t[r] = r[g]
        gens.append(t.tolist())
    return FiniteSystem(sys.n, d.tolist(), gens)
