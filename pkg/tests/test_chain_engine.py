"""tests/test_chain_engine.py - Step graphs, chain recurrence, components and transitivity on small grids."""
import numpy as np
import pytest

from chain_engine.chain_engine import (StepGraph, analyze_chains, approx_CR, build_step_graph, chain_components,
    chain_reachable, chain_recurrent_cells, components_chain_transitive, export_rows, invariance_defects, invariance_gaps,
    is_chain_transitive, is_chain_transitive_on, is_topologically_transitive, spread_offsets, validate_schedules)
from grid_space.grid_space import BoxSet, Disc, Grid, cover_region
from map_expr.map_expr import IntervalBox2
from semigroup.semigroup import GeneratorSystem, Word
from utils.errors import BudgetExceeded, ConfigError, PreconditionError

SQUARE = IntervalBox2(-1.0, 1.0, -1.0, 1.0)
WORDS = [Word((0,)), Word((1,))]


def _cell(grid, x, y) -> int:
    return int(grid.locate(x, y)[0])


def _toy_graph():
    """Four cells: 0 <-> 1, 2 -> 2, 3 isolated."""
    g = Grid(SQUARE, 1)
    return StepGraph.from_adjacency(g, np.array([0, 1, 2]), np.array([1, 0, 2]))


def test_recurrence_on_hand_built_graph():
    gr = _toy_graph()
    assert chain_recurrent_cells(gr).positions.tolist() == [0, 1, 2]
    assert chain_reachable(gr, 0, 1) and chain_reachable(gr, 1, 0)
    assert chain_reachable(gr, 2, 2)
    assert not chain_reachable(gr, 3, 3)
    assert not chain_reachable(gr, 0, 2)
    with pytest.raises(PreconditionError):
        chain_reachable(gr, 0, 9)


def test_components_on_hand_built_graph():
    gr = _toy_graph()
    comps = chain_components(gr, chain_recurrent_cells(gr))
    assert comps.count == 2
    assert comps.labels.tolist() == [0, 0, 1]
    assert comps.sizes() == [2, 1]
    assert is_chain_transitive_on(gr, BoxSet.from_positions(gr.grid, [0, 1]))
    assert not is_chain_transitive_on(gr, BoxSet.from_positions(gr.grid, [0, 2]))
    assert not is_chain_transitive_on(gr, BoxSet.from_positions(gr.grid, [3]))


def test_components_need_recurrent_cells():
    gr = _toy_graph()
    with pytest.raises(PreconditionError):
        chain_components(gr, BoxSet.from_positions(gr.grid, [3]))


def test_reachability_matches_floyd_warshall(powers):
    """Chain reachability equals the transitive closure of the explicit one-step relation."""
    grid = Grid(SQUARE, 3)
    gr = build_step_graph(grid, powers, Word((0,)), 0.3, 1)
    src, dst = gr.cell_edges()
    n = grid.N
    reach = np.zeros((n, n), dtype=bool)
    reach[src, dst] = True
    for k in range(n):
        for i in range(n):
            if reach[i, k]:
                reach[i] |= reach[k]
    for a in range(n):
        for b in range(n):
            assert chain_reachable(gr, a, b) == bool(reach[a, b])
    assert np.array_equal(gr.recurrent, np.diag(reach))


def test_export_rows_use_flat_ids(powers):
    grid = Grid(SQUARE, 2)
    gr = build_step_graph(grid, powers, Word((0,)), 0.2, 1)
    rows = export_rows(gr)
    assert rows and set(rows[0]) == {"src", "dst"}
    assert all(0 <= r["src"] < 16 and 0 <= r["dst"] < 16 for r in rows)


def test_spread_offsets_include_neighbours():
    grid = Grid(SQUARE, 4)
    dx, dy = spread_offsets(grid, 0.01)
    pairs = set(zip(dx.tolist(), dy.tolist()))
    assert pairs == {(a, b) for a in (-1, 0, 1) for b in (-1, 0, 1)}


def test_step_graph_preconditions(powers):
    grid = Grid(SQUARE, 2)
    with pytest.raises(PreconditionError):
        build_step_graph(grid, powers, Word(()), 0.1, 1)
    with pytest.raises(PreconditionError):
        build_step_graph(grid, powers, Word((0,)), 0.0, 1)
    with pytest.raises(PreconditionError):
        build_step_graph(grid, powers, Word((0,)), 0.1, -1)


@pytest.mark.parametrize("words, eps", [([], [0.1]), (WORDS, []), (WORDS, [0.1, 0.2]), (WORDS, [0.0]),
                                        ([Word(())], [0.1])])
def test_schedule_validation(words, eps):
    with pytest.raises(ConfigError):
        validate_schedules(words, eps)


def test_powers_cr_is_origin_and_circle(disc_grid, powers):
    """CR cells cluster at 0 and along the unit circle; radius 0.5 is transient."""
    grid = disc_grid(6)
    an = analyze_chains(grid, powers, WORDS, [0.1, 0.05], 2)
    cr = an.cr
    zero, one, half = _cell(grid, 1e-3, 1e-3), _cell(grid, 0.99, 1e-3), _cell(grid, 0.5, 0.01)
    assert zero in cr and one in cr
    assert half not in cr
    x, y = grid.centers(cr.positions)
    r = np.hypot(x, y)
    assert np.all((r <= 0.3) | (r >= 0.65))
    lab = dict(zip(an.components.positions.tolist(), an.components.labels.tolist()))
    assert lab[zero] != lab[one]
    assert an.eps_used == 0.05 and len(an.per_word) == 2


def test_chains_only_run_inward(disc_grid, powers):
    grid = disc_grid(6)
    gr = build_step_graph(grid, powers, Word((0,)), 0.05, 2)
    zero, half = _cell(grid, 1e-3, 1e-3), _cell(grid, 0.5, 0.01)
    assert chain_reachable(gr, half, zero)
    assert not chain_reachable(gr, zero, half)


def test_cr_shrinks_with_eps(disc_grid, powers):
    grid = disc_grid(5)
    wide = approx_CR(grid, powers, WORDS, [0.2], 2)
    narrow = approx_CR(grid, powers, WORDS, [0.05], 2)
    assert narrow.issubset(wide)


def test_contraction_cr_hugs_the_fixed_point(disc_grid):
    sys = GeneratorSystem.from_sources(["0.5*z"])
    grid = disc_grid(6)
    cr = approx_CR(grid, sys, [Word((0,))], [0.03], 2)
    assert _cell(grid, 1e-3, 1e-3) in cr
    x, y = grid.centers(cr.positions)
    assert np.all(np.hypot(x, y) <= 0.3)


def test_components_are_chain_transitive(disc_grid, powers):
    grid = disc_grid(5)
    an = analyze_chains(grid, powers, WORDS, [0.05], 2)
    flags = components_chain_transitive(grid, powers, an.components, WORDS, [0.05], 2)
    assert len(flags) == an.components.count and all(flags)
    assert is_chain_transitive(grid, powers, an.components.classes()[0], WORDS, [0.05], 2)


def test_rotation_is_transitive_at_cell_scale():
    """Quarter turns carry every 4x4 cell block around the square within three steps."""
    grid = Grid(SQUARE, 2)
    sys = GeneratorSystem.from_sources(["i*z"])
    rep = is_topologically_transitive(grid, sys, 3)
    assert rep.transitive and rep.first_failing_pair is None
    assert min(rep.cover_length) == 2 and max(rep.cover_length) == 3
    assert not is_topologically_transitive(grid, sys, 1)


def test_contraction_is_not_transitive():
    grid = Grid(SQUARE, 2)
    rep = is_topologically_transitive(grid, GeneratorSystem.from_sources(["0.5*z"]), 2)
    assert not rep
    assert rep.first_failing_pair is not None


def test_transitivity_cell_cap():
    grid = Grid(SQUARE, 8)
    with pytest.raises(BudgetExceeded):
        is_topologically_transitive(grid, GeneratorSystem.from_sources(["z^2"]), 1)


def test_invariance_defects(disc_grid, powers):
    grid = disc_grid(5)
    inner = cover_region(grid, Disc(0.5), inside=True)
    assert invariance_defects(powers, inner) == [0, 0]
    assert invariance_defects(powers, BoxSet.full(grid)) == [0, 0]
    assert invariance_defects(powers, BoxSet.empty(grid)) == [0, 0]
    lone = BoxSet.from_positions(grid, [_cell(grid, 0.6, 0.01)])
    half = GeneratorSystem.from_sources(["0.5*z"])
    assert invariance_defects(half, lone)[0] >= 1


@pytest.mark.parametrize("sources, topo", [(["i*z"], True), (["0.5*z"], False)])
def test_topological_transitivity_implies_chain_transitivity(sources, topo):
    grid = Grid(SQUARE, 2)
    sys = GeneratorSystem.from_sources(sources)
    assert bool(is_topologically_transitive(grid, sys, 3)) == topo
    if topo:
        assert is_chain_transitive(grid, sys, BoxSet.full(grid), [Word((0,))], [0.1], 1)


def test_contraction_cr_is_invariant(disc_grid):
    half = GeneratorSystem.from_sources(["0.5*z"])
    cr = approx_CR(disc_grid(6), half, [Word((0,))], [0.03], 2)
    assert cr
    assert invariance_defects(half, cr) == [0]
    assert invariance_gaps(half, cr) == [0.0]


def test_powers_cr_invariance_gaps_stay_near_the_band(disc_grid, powers):
    """Images of the circle band may fall a little inside it; the overshoot stays within a few cells."""
    grid = disc_grid(6)
    cr = approx_CR(grid, powers, WORDS, [0.03], 2)
    assert len(invariance_defects(powers, cr)) == 2
    gaps = invariance_gaps(powers, cr)
    r = np.hypot(*grid.centers(cr.positions))
    band = 1.0 - r[r > 0.5].min()
    assert all(0.0 <= g <= 2 * band + 4 * grid.cell_diameter for g in gaps)
    assert invariance_gaps(powers, BoxSet.empty(grid)) == [0.0, 0.0]
