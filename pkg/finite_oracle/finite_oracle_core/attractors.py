"""finite_oracle/finite_oracle_core/attractors.py - Exact trapping regions, attractors, basins and the duality check.
INPUT: FiniteSystem | OUTPUT: attractor records per (U, h, alpha0), exact duality report

Sets of states are int bitmasks (n <= 8). In the discrete topology closures are
the sets themselves, so U is trapping for h when Ob(h(U)) is inside U. W_0 is
the orbit of h(U) under maps free of alpha0; W_{k+1} applies alpha0 then that
orbit again, so W_k collects images by words with exactly k alpha0 letters.
States seen in infinitely many W_k are the union over the eventual cycle.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from finite_oracle.finite_oracle_core.chains import ChainData, chain_data, orbit_matrix
from finite_oracle.finite_oracle_core.finite_system import FiniteSystem
from finite_oracle.finite_oracle_core.monoid import monoid_closure
from utils.errors import PreconditionError


def bits(mask: int) -> List[int]: return [i for i in range(mask.bit_length()) if mask >> i & 1]


def to_mask(states: Sequence[int]) -> int:
    m = 0
    for s in states: m |= 1 << int(s)
    return m


def _orbit_masks(orbit: np.ndarray) -> List[int]:
    return [to_mask(np.flatnonzero(row)) for row in orbit]


def _image(table: Sequence[int], mask: int) -> int:
    return to_mask(table[i] for i in bits(mask))


def _saturate(mask: int, orb: Sequence[int]) -> int:
    out = 0
    for i in bits(mask): out |= orb[i]
    return out


@dataclass
class FiniteAttractor:
    U: List[int]; h_image: List[int]; alpha0: int
    A: List[int] = field(default_factory=list); basin: List[int] = field(default_factory=list)
    def to_dict(self): return {"U": self.U, "h_image": self.h_image, "alpha0": self.alpha0, "A": self.A,
                               "basin": self.basin}


class FiniteAttractorSolver:
    """Shared precomputation for one system: closure, orbits, alpha0-free orbits."""

    def __init__(self, sys: FiniteSystem, data: Optional[ChainData] = None):
        self.sys = sys
        self.data = data if data is not None else chain_data(sys)
        self.tables = self.data.closure.tables
        self.orb = _orbit_masks(self.data.orbit)
        self._free: Dict[int, List[int]] = {}

    def free_orbits(self, alpha0: int) -> List[int]:
        """Per state, its orbit under maps built from generators other than alpha0 (identity included)."""
        if alpha0 not in self._free:
            others = [g for i, g in enumerate(self.sys.generators) if i != alpha0]
            if not others:
                self._free[alpha0] = [1 << i for i in range(self.sys.n)]
            else:
                sub = FiniteSystem(self.sys.n, self.sys.dist, others)
                self._free[alpha0] = _orbit_masks(orbit_matrix(monoid_closure(sub)))
        return self._free[alpha0]

    def _check_alpha0(self, alpha0: int):
        if not 0 <= alpha0 < self.sys.k: raise PreconditionError(f"alpha0 must be in 0..{self.sys.k - 1}")

    def limit_set(self, start: int, alpha0: int) -> int:
        """Union over the eventual cycle of W_k started from the mask `start`."""
        self._check_alpha0(alpha0)
        free, g = self.free_orbits(alpha0), self.sys.generators[alpha0]
        w = _saturate(start, free)
        seen, hist = {}, []
        while w not in seen:
            seen[w] = len(hist); hist.append(w)
            w = _saturate(_image(g, w), free)
        out = 0
        for m in hist[seen[w]:]: out |= m
        return out

    def omega(self, x: int, alpha0: int) -> List[int]:
        return bits(self.limit_set(1 << x, alpha0))

    def trapping_images(self, U: int) -> List[int]:
        """Distinct masks h(U), h in the closure, whose orbit stays in U."""
        states = bits(U)
        imgs = np.bitwise_or.reduce(np.left_shift(1, self.tables[:, states]), axis=1) if states else []
        out = []
        for m in sorted(set(int(v) for v in imgs)):
            if _saturate(m, self.orb) & ~U == 0: out.append(m)
        return out

    def attractor(self, U: Sequence[int], h: Sequence[int], alpha0: int) -> FiniteAttractor:
        """U must be trapping for the table h."""
        u = to_mask(U)
        img = _image(h, u)
        if _saturate(img, self.orb) & ~u: raise PreconditionError("U is not a trapping region for h")
        return self._record(u, img, alpha0)

    def _record(self, u: int, img: int, alpha0: int) -> FiniteAttractor:
        a = self.limit_set(img, alpha0)
        b = [x for x in range(self.sys.n) if self.limit_set(1 << x, alpha0) & a]
        return FiniteAttractor(bits(u), bits(img), alpha0, bits(a), b)

    def all_attractors(self, alpha0: int) -> List[FiniteAttractor]:
        """Every nonempty U and every h with a distinct image set."""
        out = []
        for u in range(1, 1 << self.sys.n):
            for img in self.trapping_images(u): out.append(self._record(u, img, alpha0))
        return out


def exact_omega(sys: FiniteSystem, x: int, alpha0: int) -> List[int]:
    return FiniteAttractorSolver(sys).omega(x, alpha0)


def exact_attractor(sys: FiniteSystem, U: Sequence[int], h: Sequence[int], alpha0: int) -> FiniteAttractor:
    return FiniteAttractorSolver(sys).attractor(U, h, alpha0)


def exact_basin(sys: FiniteSystem, U: Sequence[int], h: Sequence[int], alpha0: int) -> List[int]:
    return exact_attractor(sys, U, h, alpha0).basin


def exact_duality(sys: FiniteSystem, data: Optional[ChainData] = None) -> dict:
    """X \\ CR against the union of B(A) \\ A over every trapping region, for every alpha0.

    Both sides are always reported; `asserted` is False for non-abelian tables,
    where the equality is informational only.
    """
    solver = FiniteAttractorSolver(sys, data)
    cr = to_mask(np.flatnonzero(solver.data.cr))
    lhs = ((1 << sys.n) - 1) & ~cr
    per_alpha, union_all = [], 0
    for a0 in range(sys.k):
        union = 0
        recs = solver.all_attractors(a0)
        for r in recs: union |= to_mask(r.basin) & ~to_mask(r.A)
        union_all |= union
        per_alpha.append({"alpha0": a0, "attractors": len(recs), "union": bits(union), "equal": union == lhs})
    return {"cr": bits(cr), "complement": bits(lhs), "union_basin_minus_attractor": bits(union_all),
            "per_alpha0": per_alpha, "equal": all(p["equal"] for p in per_alpha), "asserted": sys.is_abelian()}
