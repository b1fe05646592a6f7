"""runner/runner.py - Main orchestrator.

Flow per scenario:
  1. Resolve scenario (parse generators, build grid, expand g schedule)
  2. Abelian evidence (sampled; decides whether the duality verdict is asserted)
  3. CR stage: step graphs per g at the finest eps -> cr.csv, components.csv, cr.pgm
  4. Attractor stage: candidates -> certificates -> attractors + basins
  5. Duality stage: X \\ CR against the union of B(A) \\ A -> duality.json, duality.pgm
  6. report.json (deterministic) and run.json (timings, host facts)
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence

from attractor_engine.attractor_engine_core.attractor import basin, compute_attractor, invariance_defect_cells
from attractor_engine.attractor_engine_core.duality import duality_raster, duality_report
from attractor_engine.attractor_engine_core.image_operator import generator_relations
from attractor_engine.attractor_engine_core.trapping import find_certificate, gather_candidates
from chain_engine.chain_engine_core.recurrence import (CRAnalysis, analyze_chains, components_chain_transitive,
    invariance_defects, invariance_gaps)
from chain_engine.chain_engine_core.step_graph import build_step_graph, export_rows
from chain_engine.chain_engine_core.transitivity import is_topologically_transitive
from config.scenario_loader import ResolvedScenario, resolve_scenario
from config.settings import (ABELIAN_SAMPLES, EXPORT_EDGES_MAX_CELLS, TOOL_NAME, TOOL_VERSION,
    TRANSITIVITY_MAX_CELLS)
from map_expr.map_expr_core.parser import parse_map_expr
from models.data_models import AnalysisReport, AttractorRecord, Scenario, TrappingCertificate
from runner.runner_core.artifacts import ArtifactWriter
from runner.runner_core.sweep import run_sweep
from runner.runner_core.system_info import get_process_info, get_system_info
from runner.runner_ui.progress import StageTimer
from semigroup.semigroup_core.generator_system import AbelianEvidence, abelian_evidence
from semigroup.semigroup_core.words import format_word
from utils.budget import Budget
from utils.canonical_json import config_hash
from utils.errors import ConfigError, InvariantViolation, MapSyntaxError
from utils.logger import logger


@dataclass
class RunContext:
    resolved: ResolvedScenario
    out: ArtifactWriter
    budget: Budget = field(default_factory=Budget)
    timer: StageTimer = field(default_factory=StageTimer)
    evidence: Optional[AbelianEvidence] = None
    report: AnalysisReport = field(default_factory=AnalysisReport)

    @property
    def scenario(self) -> Scenario: return self.resolved.scenario

    @property
    def abelian(self) -> bool: return bool(self.evidence and self.evidence.passed)


# ══════════════════════════════════════
# CONTEXT
# ══════════════════════════════════════

def open_run(scenario: Scenario, out_dir: Optional[Path] = None, threads: Optional[int] = None) -> RunContext:
    if threads is not None: scenario.threads = int(threads)
    if out_dir is not None: scenario.output_dir = str(out_dir)
    resolved = resolve_scenario(scenario)
    out = ArtifactWriter(Path(scenario.output_dir))
    logger.attach_file(out.path("run.log"))
    logger.log(f"[RUN] {TOOL_NAME} {TOOL_VERSION} scenario={scenario.name} {resolved.grid!r} "
               f"generators={resolved.system.sources}")
    ctx = RunContext(resolved, out)
    ctx.report = AnalysisReport(tool=TOOL_NAME, version=TOOL_VERSION, config_hash=config_hash(scenario.echo()),
                                scenario=scenario.echo())
    with ctx.timer.stage("abelian evidence"):
        ev = abelian_evidence(resolved.system, ABELIAN_SAMPLES, resolved.grid.bounds, resolved.grid.region,
                              seed=scenario.seed)
    ctx.evidence = ev
    if scenario.abelian_claimed and not ev.passed:
        logger.log(f"[ABELIAN] claim not supported: max defect {ev.max_defect:g} on pair {ev.worst_pair}")
    ctx.report.abelian = {"claimed": scenario.abelian_claimed, "evidence": ev.to_dict(), "asserted": ctx.abelian}
    return ctx


def close_run(ctx: RunContext) -> AnalysisReport:
    """Writes report.json (deterministic) then run.json (volatile) and detaches the log file."""
    ctx.report.artifacts = sorted(set(ctx.out.listing()) | {"report.json"})
    ctx.out.json("report.json", ctx.report.to_dict())
    run = {"tool": TOOL_NAME, "version": TOOL_VERSION, "config_hash": ctx.report.config_hash,
           "threads": ctx.scenario.threads, "timings": ctx.timer.to_list(), "budget": ctx.budget.summary(),
           "system": get_system_info(), "process": get_process_info()}
    ctx.out.json("run.json", run)
    logger.log(f"[RUN] done -> {ctx.out.out_dir}")
    logger.detach_file()
    return ctx.report


# ══════════════════════════════════════
# STAGES
# ══════════════════════════════════════

def cr_stage(ctx: RunContext) -> CRAnalysis:
    s, grid, sys = ctx.scenario, ctx.resolved.grid, ctx.resolved.system
    words = ctx.resolved.g_words
    with ctx.timer.stage("chain recurrence"):
        an = analyze_chains(grid, sys, words, s.eps_schedule, s.L, ctx.budget, s.threads)
    with ctx.timer.stage("cr artifacts"):
        defects = invariance_defects(sys, an.cr, ctx.budget)
        gaps = invariance_gaps(sys, an.cr, ctx.budget)
        frag = {"file": "cr.csv", "cells": len(an.cr), "area": an.cr.area, "cell_diameter": grid.cell_diameter,
                "eps_used": an.eps_used, "eps_schedule": list(s.eps_schedule), "L": s.L,
                "g_schedule": [format_word(w) for w in words], "per_word": an.per_word,
                "invariance_defects": defects, "invariance_gaps": gaps}
        ctx.out.cells("cr.csv", an.cr, extra={"cr": frag})
        ctx.out.rows("components.csv", ["ix", "iy", "component_id"], an.components.rows())
        ctx.out.pgm("cr.pgm", an.cr)
        ctx.report.cr = frag
        ctx.report.components = {"file": "components.csv", "count": an.components.count,
                                 "sizes": an.components.sizes()}
        if s.export_edges:
            if grid.N > EXPORT_EDGES_MAX_CELLS:
                logger.log(f"[CR] edge export skipped: {grid.N} cells > {EXPORT_EDGES_MAX_CELLS}")
            else:
                gr = build_step_graph(grid, sys, words[0], an.eps_used, s.L, ctx.budget, s.threads)
                ctx.out.rows("edges.csv", ["src", "dst"], export_rows(gr))
    logger.log(f"[CR] {len(an.cr)} cells, {an.components.count} components, "
               f"invariance defects {defects} reaching {max(gaps):.3f}")
    if s.transitivity_budget > 0: transitivity_stage(ctx, an)
    return an


def transitivity_stage(ctx: RunContext, an: CRAnalysis) -> dict:
    s, grid, sys = ctx.scenario, ctx.resolved.grid, ctx.resolved.system
    out = {"word_budget": s.transitivity_budget}
    with ctx.timer.stage("transitivity"):
        if grid.N > TRANSITIVITY_MAX_CELLS:
            out["topological"] = None
            out["note"] = f"skipped: {grid.N} cells > {TRANSITIVITY_MAX_CELLS}"
        else:
            rep = is_topologically_transitive(grid, sys, s.transitivity_budget, ctx.budget)
            out["topological"] = rep.to_dict()
        out["components_chain_transitive"] = components_chain_transitive(
            grid, sys, an.components, ctx.resolved.g_words, s.eps_schedule, s.L, ctx.budget)
    ctx.report.transitivity = out
    return out


@dataclass
class AttractorStage:
    certificates: List[TrappingCertificate]
    records: List[AttractorRecord]
    disagreement: List[str]


def attractor_stage(ctx: RunContext) -> AttractorStage:
    s, grid, sys = ctx.scenario, ctx.resolved.grid, ctx.resolved.system
    with ctx.timer.stage("trapping regions"):
        cands = gather_candidates(grid, sys, s.trapping_candidates, s.sublevel_radii, s.reachable_seeds,
                                  ctx.resolved.g_words[0], s.eps_schedule[-1], s.L, ctx.budget)
        certs = [find_certificate(grid, sys, U, s.L, h, s.h_search_len, ctx.budget, label, kind)
                 for label, kind, U, h in cands]
    accepted = [c for c in certs if c.accepted]
    records, summaries, disagreement = [], [], []
    with ctx.timer.stage("attractors and basins"):
        relations = generator_relations(grid, sys, ctx.budget) if accepted else []
        for cert in accepted:
            per = []
            for a0 in s.alpha0:
                rec = compute_attractor(grid, sys, cert, a0, s.m_max, ctx.budget)
                if not rec.A.issubset(cert.U):
                    raise InvariantViolation(f"{cert.label}: attractor leaves its certified region")
                rec.basin = basin(grid, sys, rec, a0, s.depth_m, s.L, ctx.budget, relations)
                per.append(rec)
            if len({r.A.mask.tobytes() for r in per}) > 1:
                msg = f"{cert.label}: attractor depends on alpha0 ({', '.join(str(r.alpha0) for r in per)})"
                disagreement.append(msg); logger.log(f"[ATTR] {msg}")
            records.extend(per)
    for k, rec in enumerate(records):
        d = rec.summary()
        d.update({"A_file": f"attractor_{k}_A.csv", "basin_file": f"attractor_{k}_basin.csv",
                  "A_in_U": rec.A.issubset(rec.source.U), "U_in_basin": rec.source.U.issubset(rec.basin),
                  "invariance_defects": invariance_defect_cells(grid, sys, rec.A, relations)})
        ctx.out.cells(d["A_file"], rec.A)
        ctx.out.cells(d["basin_file"], rec.basin)
        summaries.append(d)
    ctx.out.json("attractors.json", {"certificates": [c.summary() for c in certs], "attractors": summaries,
                                     "alpha0_disagreement": disagreement})
    ctx.report.certificates = [c.summary() for c in certs]
    ctx.report.attractors = summaries
    ctx.report.alpha0_disagreement = disagreement
    logger.log(f"[ATTR] {len(accepted)}/{len(certs)} certified, {len(records)} attractors")
    return AttractorStage(certs, records, disagreement)


def duality_stage(ctx: RunContext, an: CRAnalysis, att: AttractorStage) -> dict:
    """Uses the attractors of the first alpha0."""
    a0 = ctx.scenario.alpha0[0]
    recs = [r for r in att.records if r.alpha0 == a0]
    with ctx.timer.stage("duality"):
        rep, d, sym = duality_report(ctx.resolved.grid, an.cr, recs, ctx.abelian)
        ctx.out.json("duality.json", dict(rep.to_dict(), alpha0=a0, abelian_evidence=ctx.evidence.to_dict()))
        ctx.out.raster("duality.pgm", duality_raster(d, sym))
    ctx.report.duality = rep.to_dict()
    return ctx.report.duality


# ══════════════════════════════════════
# ENTRY POINTS
# ══════════════════════════════════════

def run_cr(scenario: Scenario, out_dir: Optional[Path] = None, threads: Optional[int] = None) -> AnalysisReport:
    ctx = open_run(scenario, out_dir, threads)
    try:
        cr_stage(ctx)
        return close_run(ctx)
    finally:
        logger.detach_file()


def run_attractors(scenario: Scenario, out_dir: Optional[Path] = None,
                   threads: Optional[int] = None) -> AnalysisReport:
    """Certificates, attractors and basins only. The duality report needs CR and comes from run_duality."""
    ctx = open_run(scenario, out_dir, threads)
    try:
        attractor_stage(ctx)
        return close_run(ctx)
    finally:
        logger.detach_file()


def run_duality(scenario: Scenario, out_dir: Optional[Path] = None, threads: Optional[int] = None) -> AnalysisReport:
    ctx = open_run(scenario, out_dir, threads)
    try:
        an = cr_stage(ctx)
        att = attractor_stage(ctx)
        duality_stage(ctx, an, att)
        return close_run(ctx)
    finally:
        logger.detach_file()


def run_oracle_sweep(seed_count: int, n_max: int, abelian_only: bool, seed: int = 0,
                     out_dir: Optional[Path] = None, workers: int = 1) -> dict:
    """Writes oracle.jsonl (one record per seed) and oracle.json (summary)."""
    timer = StageTimer()
    with timer.stage("oracle sweep"):
        records, summary = run_sweep(seed_count, n_max, abelian_only, seed, workers)
    summary = dict(summary, tool=TOOL_NAME, version=TOOL_VERSION, base_seed=seed, n_max=n_max)
    if out_dir is not None:
        out = ArtifactWriter(Path(out_dir))
        out.jsonl("oracle.jsonl", records)
        out.json("oracle.json", summary)
        out.json("run.json", {"tool": TOOL_NAME, "version": TOOL_VERSION, "workers": workers,
                              "timings": timer.to_list(), "system": get_system_info()})
    logger.log(f"[ORACLE] {summary['systems']} systems, {len(summary['failures'])} failures, "
               f"{len(summary['skipped_seeds'])} skipped -> {summary['verdict']}")
    return summary


def parse_check(sources: Sequence[str]) -> List[str]:
    """Round-trips each expression through the parser; errors name the expression index."""
    out = []
    for k, src in enumerate(sources):
        try: out.append(str(parse_map_expr(src)))
        except MapSyntaxError as exc: raise ConfigError(f"{exc} in {src!r}", f"expr[{k}]") from exc
    return out
