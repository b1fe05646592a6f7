"""tests/test_attractor_engine.py - Trapping certificates, attractors, omega-limits, basins and the grid duality report."""
from dataclasses import replace

import numpy as np
import pytest

from attractor_engine.attractor_engine import (basin, basin_minus_attractor_union, certify_trapping,
    compute_attractor, duality_raster, duality_report, find_certificate, gather_candidates, generator_relations,
    image_of, invariance_defect_cells, omega_limit_cells, region_candidate)
from config.settings import FAIL, PASS, UNASSERTED
from grid_space.grid_space import BoxSet, Disc, Grid, cover_region, fatten
from map_expr.map_expr import IntervalBox2
from models.data_models import AttractorRecord, TrappingCertificate
from semigroup.semigroup import GeneratorSystem, Word
from utils.errors import ConfigError, PreconditionError

SQ = Word((0,))


@pytest.fixture
def grid6(disc_grid):
    return disc_grid(6)


@pytest.fixture
def sublevel_cert(grid6, powers):
    U = cover_region(grid6, Disc(0.5), inside=True)
    return certify_trapping(grid6, powers, U, SQ, 2, label="sublevel r=0.5", kind="sublevel")


def test_sublevel_disc_is_trapping(sublevel_cert):
    assert sublevel_cert.accepted
    assert sublevel_cert.status == "certified"
    assert sublevel_cert.violating_cell is None
    assert fatten(sublevel_cert.image_set, 0.0).issubset(sublevel_cert.U)


def test_annulus_is_rejected(grid6, powers):
    U = cover_region(grid6, Disc(0.9), inside=True) - cover_region(grid6, Disc(0.5))
    cert = certify_trapping(grid6, powers, U, SQ, 2)
    assert not cert.accepted
    assert cert.violating_cell is not None and cert.violating_cell not in U
    assert cert.summary()["violating_cell"] is not None


def test_whole_grid_is_trapping(grid6, powers):
    cert = certify_trapping(grid6, powers, BoxSet.full(grid6), SQ, 2)
    assert cert.accepted


def test_certificate_preconditions(grid6, powers):
    with pytest.raises(PreconditionError):
        certify_trapping(grid6, powers, BoxSet.empty(grid6), SQ, 1)
    with pytest.raises(PreconditionError):
        certify_trapping(grid6, powers, BoxSet.full(grid6), Word(()), 1)


def test_find_certificate_searches_h(grid6, powers):
    U = cover_region(grid6, Disc(0.5), inside=True)
    cert = find_certificate(grid6, powers, U, 2)
    assert cert.accepted and cert.h == SQ


def test_image_of_square_shrinks_the_disc(grid6, powers):
    U = cover_region(grid6, Disc(0.5), inside=True)
    img = image_of(grid6, powers, U, 0, inner=SQ).cells
    x, y = grid6.centers(img.positions)
    assert img and np.all(np.hypot(x, y) <= 0.35)


def test_attractor_of_sublevel_is_the_origin(grid6, powers, sublevel_cert):
    """A sits inside U and within two cell diameters of 0."""
    rec = compute_attractor(grid6, powers, sublevel_cert, 0, 32)
    assert rec.stabilized and rec.cycle_length >= 1
    assert rec.A.issubset(sublevel_cert.U)
    x, y = grid6.centers(rec.A.positions)
    assert np.all(np.hypot(x, y) <= 2 * grid6.cell_diameter)
    assert int(grid6.locate(1e-3, 1e-3)[0]) in rec.A


def test_basin_contains_trapping_region(grid6, powers, sublevel_cert):
    rels = generator_relations(grid6, powers)
    rec = compute_attractor(grid6, powers, sublevel_cert, 0, 32)
    b = basin(grid6, powers, rec, 0, 4, 2, relations=rels)
    assert sublevel_cert.U.issubset(b)
    assert rec.A.issubset(b)


def test_basin_covers_the_open_disc(grid6, powers, sublevel_cert):
    rec = compute_attractor(grid6, powers, sublevel_cert, 0, 32)
    b = basin(grid6, powers, rec, 0, 4, 2)
    assert cover_region(grid6, Disc(0.8), inside=True).issubset(b)


def test_omega_limit_of_interior_point(grid6, powers, sublevel_cert):
    rels = generator_relations(grid6, powers)
    rec = compute_attractor(grid6, powers, sublevel_cert, 0, 32)
    start = BoxSet.from_positions(grid6, [int(grid6.locate(0.3, 0.1)[0])])
    omega = omega_limit_cells(grid6, powers, start, 0, 4, 2, relations=rels)
    assert omega and omega.issubset(fatten(rec.A, 0.0))


def test_attractor_is_invariant_up_to_one_layer(grid6, powers, sublevel_cert):
    rels = generator_relations(grid6, powers)
    rec = compute_attractor(grid6, powers, sublevel_cert, 0, 32)
    assert invariance_defect_cells(grid6, powers, rec.A, rels) == [0, 0]


def test_attractor_preconditions(grid6, powers, sublevel_cert):
    with pytest.raises(PreconditionError):
        compute_attractor(grid6, powers, sublevel_cert, 2, 8)
    with pytest.raises(PreconditionError):
        compute_attractor(grid6, powers, sublevel_cert, 0, 0)
    rejected = TrappingCertificate(U=sublevel_cert.U, h=SQ, L=2, image_set=sublevel_cert.image_set)
    with pytest.raises(PreconditionError):
        compute_attractor(grid6, powers, rejected, 0, 8)
    with pytest.raises(PreconditionError):
        compute_attractor(grid6, powers, replace(sublevel_cert, L=0), 0, 8)


def test_attractor_ignores_the_certificate_image_set(grid6, powers, sublevel_cert):
    """A is the closure of the stabilized iterates, whatever image_set the certificate carries."""
    full = compute_attractor(grid6, powers, sublevel_cert, 0, 32)
    lone = BoxSet.from_positions(grid6, [int(grid6.locate(1e-3, 1e-3)[0])])
    narrow = compute_attractor(grid6, powers, replace(sublevel_cert, image_set=lone), 0, 32)
    assert narrow.A == full.A
    assert not full.A.issubset(fatten(lone, 0.0))


def test_images_leaving_the_disc_reject_the_candidate(disc_grid):
    """A shift that carries the origin past the unit circle: nothing retained is hit, yet U is not trapping."""
    grid = disc_grid(5)
    sys = GeneratorSystem.from_sources(["z + 0.9 + 0.9*i"])
    U = cover_region(grid, Disc(0.1), inside=True)
    cert = certify_trapping(grid, sys, U, SQ, 0)
    assert not cert.image_set and cert.spill == 0 and cert.escaped > 0
    assert not cert.accepted and cert.violating_cell is None
    assert cert.summary()["escaped"] == cert.escaped


def test_whole_grid_may_spill_past_the_disc(grid6, powers):
    cert = certify_trapping(grid6, powers, BoxSet.full(grid6), SQ, 2)
    assert cert.accepted and cert.escaped > 0


def test_fixed_cell_is_its_own_attractor():
    """The 2x2 block around a fixed grid vertex is the core, so A equals its one-layer closure."""
    grid = Grid(IntervalBox2(-1.0, 1.0, -1.0, 1.0), 3)
    sys = GeneratorSystem.from_sources(["0.25*z"])
    U = fatten(BoxSet.from_cells(grid, [3, 4, 3, 4], [3, 3, 4, 4]), 0.0)
    cert = certify_trapping(grid, sys, U, SQ, 1)
    assert cert.accepted
    rec = compute_attractor(grid, sys, cert, 0, 8)
    assert rec.A == U


def test_candidates_from_config_sublevels_and_seeds(grid6, powers):
    specs = [{"kind": "whole", "h": [0]}, {"kind": "rect", "bounds": [-0.2, 0.2, -0.2, 0.2]}]
    cands = gather_candidates(grid6, powers, specs, [0.5], [[0.0, 0.0], [5.0, 5.0]], SQ, 0.05, 2)
    kinds = [c[1] for c in cands]
    assert kinds == ["whole", "rect", "sublevel", "reachable"]
    assert cands[0][3] == SQ and cands[1][3] is None
    assert len(cands[0][2]) == grid6.N


@pytest.mark.parametrize("spec", [{"kind": "hexagon"}, {"kind": "disc"}, {"kind": "annulus", "inner": 0.2}])
def test_bad_candidates(grid6, spec):
    with pytest.raises(ConfigError) as info:
        region_candidate(grid6, spec, 3)
    assert info.value.field == "trapping_candidates[3]"


# ── duality report on synthetic sets ──

def _strip(grid, lo, hi) -> BoxSet:
    return BoxSet(grid, (grid.ix >= lo) & (grid.ix < hi))


def _record(grid, A, B) -> AttractorRecord:
    cert = TrappingCertificate(U=B, h=SQ, L=1, image_set=A, accepted=True)
    return AttractorRecord(A=A, source=cert, alpha0=0, basin=B)


def test_duality_exact_agreement():
    grid = Grid(IntervalBox2(-1.0, 1.0, -1.0, 1.0), 4)
    rec = _record(grid, _strip(grid, 0, 2), _strip(grid, 0, 8))
    cr = _strip(grid, 0, 2) | _strip(grid, 8, 16)
    rep, d, sym = duality_report(grid, cr, [rec], abelian=True)
    assert rep.verdict == PASS and rep.sym_diff_cells == 0 and rep.max_boundary_distance == 0.0
    assert d == _strip(grid, 2, 8)
    rep, _, _ = duality_report(grid, cr, [rec], abelian=False)
    assert rep.verdict == UNASSERTED


def test_duality_far_disagreement_fails():
    grid = Grid(IntervalBox2(-1.0, 1.0, -1.0, 1.0), 4)
    rec = _record(grid, _strip(grid, 0, 2), _strip(grid, 0, 8))
    rep, _, sym = duality_report(grid, _strip(grid, 0, 2), [rec], abelian=True)
    assert rep.verdict == FAIL
    assert sym == _strip(grid, 8, 16)
    assert rep.max_boundary_distance > rep.layer_cells


def test_duality_raster_codes():
    grid = Grid(IntervalBox2(-1.0, 1.0, -1.0, 1.0), 2)
    d = _strip(grid, 0, 2)
    sym = _strip(grid, 3, 4)
    r = duality_raster(d, sym)
    assert r[0, 0] == 255 and r[0, 2] == 0 and r[0, 3] == 128


def test_union_needs_basins():
    grid = Grid(IntervalBox2(-1.0, 1.0, -1.0, 1.0), 2)
    rec = _record(grid, BoxSet.full(grid), BoxSet.full(grid))
    rec.basin = None
    with pytest.raises(PreconditionError):
        basin_minus_attractor_union(grid, [rec])


def test_attractor_refines_monotonically(disc_grid, powers):
    """Each finer attractor lies in the closure of the coarser one."""
    prev = None
    for depth in (6, 7, 8):
        grid = disc_grid(depth)
        U = cover_region(grid, Disc(0.5), inside=True)
        A = compute_attractor(grid, powers, certify_trapping(grid, powers, U, SQ, 2), 0, 32).A
        if prev is not None:
            x, y = grid.centers(A.positions)
            pos = prev.grid.locate(x, y)
            assert np.all(pos >= 0)
            closure = fatten(prev, 0.0)
            assert all(int(p) in closure for p in pos)
        prev = A
