"""runner/runner_core/sweep.py - Seeded random finite systems through the exact property suite.
INPUT: seed count, n_max, abelian flag, base seed, worker count | OUTPUT: SweepRecord dicts + summary

System i draws everything from default_rng([base_seed, i]), so records do not
depend on the worker count or on scheduling order.
"""
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Tuple

import numpy as np

from config.settings import DEFAULT_SWEEP_MAX_GENERATORS, FAIL, PASS
from finite_oracle.finite_oracle_core.chains import chain_data
from finite_oracle.finite_oracle_core.finite_system import random_system
from finite_oracle.finite_oracle_core.monoid import monoid_closure
from finite_oracle.finite_oracle_core.properties import check_properties
from models.data_models import SweepRecord
from utils.errors import BudgetExceeded, PreconditionError

ASSERTED = ("equivalence", "partition", "invariance", "topo_implies_chain", "duality", "conjugacy")


def sweep_one(job: Tuple[int, int, int, bool]) -> dict:
    base_seed, i, n_max, abelian_only = job
    rng = np.random.default_rng([base_seed, i])
    n = int(rng.integers(min(2, n_max), n_max + 1))
    k = int(rng.integers(1, DEFAULT_SWEEP_MAX_GENERATORS + 1))
    abelian = True if abelian_only else bool(rng.integers(0, 2))
    sys = random_system(rng, n, k, abelian)
    rec = SweepRecord(seed=i, n=n, generators=k, abelian=sys.is_abelian(), system=sys.to_dict())
    try:
        closure = monoid_closure(sys)
        rec.closure_size = closure.size
        props, dual = check_properties(sys, rng, chain_data(sys, closure))
        rec.properties = props
        rec.duality = {"cr": dual["cr"], "union_basin_minus_attractor": dual["union_basin_minus_attractor"],
                       "equal": dual["equal"], "asserted": dual["asserted"]}
    except (BudgetExceeded, PreconditionError) as exc:
        rec.error = str(exc)
    return rec.to_dict()


def summarize(records: List[dict], abelian_only: bool) -> dict:
    """Pass/fail/n.a. counts per property, grouped by exact abelianness; only the abelian group is asserted."""
    groups: Dict[str, Dict[str, Dict[str, int]]] = {}
    failures: List[dict] = []
    for r in records:
        if r["error"]: continue
        g = groups.setdefault("abelian" if r["abelian"] else "nonabelian", {})
        for name, val in sorted(r["properties"].items()):
            c = g.setdefault(name, {"pass": 0, "fail": 0, "na": 0})
            c["na" if val is None else ("pass" if val else "fail")] += 1
            if r["abelian"] and name in ASSERTED and val is False:
                failures.append({"seed": r["seed"], "property": name})
    skipped = [r["seed"] for r in records if r["error"]]
    return {"systems": len(records), "abelian_only": abelian_only, "skipped_seeds": skipped, "groups": groups,
            "failures": failures, "verdict": PASS if not failures else FAIL}


def run_sweep(seed_count: int, n_max: int, abelian_only: bool, base_seed: int = 0,
              workers: int = 1) -> Tuple[List[dict], dict]:
    if seed_count < 1: raise PreconditionError("seed_count must be >= 1")
    if n_max < 1: raise PreconditionError("n_max must be >= 1")
    jobs = [(base_seed, i, n_max, abelian_only) for i in range(seed_count)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            records = list(ex.map(sweep_one, jobs, chunksize=max(1, seed_count // (4 * workers))))
    else:
        records = [sweep_one(j) for j in jobs]
    return records, summarize(records, abelian_only)
