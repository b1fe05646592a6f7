"""tests/test_finite_oracle.py - Exact semantics on hand-built and random finite systems."""
import json

import numpy as np
import pytest

from finite_oracle.finite_oracle import (FiniteSystem, chain_data, check_properties, conjugate_system,
    exact_attractor, exact_basin, exact_chain_components, exact_CR, exact_duality, exact_omega,
    exact_transitivity, is_chain_transitive_subset, load_system, monoid_closure, random_system, save_system)
from utils.errors import BudgetExceeded, ConfigError, PreconditionError


def line(n):
    """States 0..n-1 on a line at unit spacing."""
    return [[float(abs(i - j)) for j in range(n)] for i in range(n)]


def system(*tables):
    return FiniteSystem(len(tables[0]), line(len(tables[0])), list(tables))


# ── hand-built systems ──

def test_constant_map():
    sys = system([0, 0, 0])
    assert exact_CR(sys) == [0]
    assert exact_chain_components(sys) == [[0]]
    assert exact_omega(sys, 2, 0) == [0]
    rec = exact_attractor(sys, [0, 1], [0, 0, 0], 0)
    assert rec.A == [0] and rec.basin == [0, 1, 2]
    assert exact_basin(sys, [0, 1], [0, 0, 0], 0) == [0, 1, 2]
    dual = exact_duality(sys)
    assert dual["complement"] == [1, 2] == dual["union_basin_minus_attractor"]
    assert dual["equal"] and dual["asserted"]


def test_three_cycle():
    sys = system([1, 2, 0])
    assert monoid_closure(sys).size == 3
    assert exact_CR(sys) == [0, 1, 2]
    assert exact_chain_components(sys) == [[0, 1, 2]]
    assert exact_transitivity(sys) == {"topological": True, "chain": True, "dense_orbit": 0}
    with pytest.raises(PreconditionError):
        exact_attractor(sys, [0], [1, 2, 0], 0)


def test_rotations_close_to_cyclic_group():
    sys = system([1, 2, 3, 0], [2, 3, 0, 1])
    cl = monoid_closure(sys)
    assert cl.size == 4 and cl.contains_identity
    assert sys.is_abelian()


def test_identity_keeps_every_state_apart():
    sys = system([0, 1])
    assert exact_CR(sys) == [0, 1]
    assert exact_chain_components(sys) == [[0], [1]]
    t = exact_transitivity(sys)
    assert not t["topological"] and not t["chain"] and t["dense_orbit"] is None


def test_retraction_with_constant():
    """g retracts 1 onto 0, h sends everything to 2; only 2 is chain recurrent."""
    sys = system([0, 0, 2], [2, 2, 2])
    assert sys.is_abelian()
    assert exact_CR(sys) == [2]
    dual = exact_duality(sys)
    assert dual["complement"] == [0, 1]
    assert all(p["equal"] for p in dual["per_alpha0"])


def test_noncommuting_pair_is_not_asserted():
    sys = system([1, 0, 2], [0, 2, 1])
    assert not sys.is_abelian()
    assert exact_duality(sys)["asserted"] is False


def test_subset_transitivity():
    sys = system([0, 0, 2])
    d = chain_data(sys)
    assert is_chain_transitive_subset(d, [0])
    assert not is_chain_transitive_subset(d, [0, 2])
    assert not is_chain_transitive_subset(d, [])


# ── conjugation ──

def test_identity_conjugacy_is_a_no_op():
    sys = system([1, 2, 0], [0, 0, 0])
    assert conjugate_system(sys, [0, 1, 2]) == sys


def test_conjugacy_moves_states():
    moved = conjugate_system(system([0, 0, 0]), [2, 1, 0])
    assert moved.generators == ((2, 2, 2),)
    assert exact_CR(moved) == [2]


def test_conjugacy_needs_bijection():
    with pytest.raises(PreconditionError):
        conjugate_system(system([0, 0, 0]), [0, 0, 1])


# ── validation ──

@pytest.mark.parametrize("dist", [
    [[0, 1], [2, 0]],
    [[0, 1, 5], [1, 0, 1], [5, 1, 0]],
    [[0, 0], [0, 0]],
    [[1, 1], [1, 0]],
])
def test_bad_metrics(dist):
    with pytest.raises(ConfigError) as info:
        FiniteSystem(len(dist), dist, [list(range(len(dist)))])
    assert info.value.field == "dist"


def test_line_metric_is_accepted():
    assert FiniteSystem(4, line(4), [[0, 1, 2, 3]]).min_positive_distance == 1.0


def test_bad_tables():
    with pytest.raises(ConfigError) as info:
        FiniteSystem(3, line(3), [[0, 5, 0]])
    assert info.value.field == "generators[0]"
    with pytest.raises(ConfigError):
        FiniteSystem(3, line(3), [])


def test_too_many_states():
    with pytest.raises(PreconditionError):
        monoid_closure(system(list(range(9))))


def test_closure_cap():
    with pytest.raises(BudgetExceeded):
        monoid_closure(system([1, 2, 3, 4, 0]), limit=3)


def test_save_and_load(tmp_path):
    sys = system([1, 0, 2], [0, 0, 0])
    path = tmp_path / "sys.json"
    save_system(path, sys)
    assert json.loads(path.read_text())["n"] == 3
    assert load_system(path) == sys


# ── brute force on random systems ──

def naive_closure(sys):
    gens = [tuple(g) for g in sys.generators]
    out = set(gens)
    while True:
        more = {tuple(g[x] for x in m) for m in out for g in gens} - out
        if not more: return out
        out |= more


def naive_cr(sys):
    """Warshall per closure element on y -> orbit(m(y)), intersected; CR is the diagonal."""
    n = sys.n
    cl = naive_closure(sys)
    hat = cl | {tuple(range(n))}
    orbit = [{f[z] for f in hat} for z in range(n)]
    reach = [[True] * n for _ in range(n)]
    for m in cl:
        r = [[w in orbit[m[y]] for w in range(n)] for y in range(n)]
        for k in range(n):
            for i in range(n):
                if r[i][k]:
                    for j in range(n):
                        r[i][j] = r[i][j] or r[k][j]
        reach = [[reach[i][j] and r[i][j] for j in range(n)] for i in range(n)]
    return [x for x in range(n) if reach[x][x]], len(cl)


@pytest.mark.parametrize("seed", range(40))
def test_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 5))
    sys = random_system(rng, n, int(rng.integers(1, 4)), abelian=bool(seed % 2))
    cr, size = naive_cr(sys)
    assert exact_CR(sys) == cr
    assert monoid_closure(sys).size == size


@pytest.mark.parametrize("seed", range(30))
def test_properties_hold_for_commuting_tables(seed):
    rng = np.random.default_rng([7, seed])
    sys = random_system(rng, int(rng.integers(2, 5)), int(rng.integers(1, 4)), abelian=True)
    assert sys.is_abelian()
    props, dual = check_properties(sys, rng)
    for name in ("equivalence", "partition", "invariance", "duality", "conjugacy"):
        assert props[name] is True, name
    assert props["topo_implies_chain"] in (True, None)
    assert dual["asserted"]


@pytest.mark.parametrize("seed", range(20))
def test_structural_properties_without_commutation(seed):
    rng = np.random.default_rng([11, seed])
    sys = random_system(rng, int(rng.integers(2, 5)), 2, abelian=False)
    props, _ = check_properties(sys, rng)
    assert props["equivalence"] and props["partition"] and props["conjugacy"]
    assert props["topo_implies_chain"] in (True, None)
