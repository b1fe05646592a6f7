"""runner/runner_core/cli.py - Command-line surface.
INPUT: argv | OUTPUT: exit code (0 ok, 2 config, 3 budget, 4 invariant / internal)

  chain-scout cr          --scenario s.json | --preset NAME  [--out DIR] [--threads N] [--seed S] [--depth D]
  chain-scout attractors  (same flags)
  chain-scout duality     (same flags)
  chain-scout oracle      [--seeds 200] [--n-max 6] [--abelian-only | --include-nonabelian] [--out DIR]
  chain-scout parse-check --scenario s.json | --preset NAME | --expr "z^2" [--expr ...]
"""
import argparse
import sys
import traceback
from pathlib import Path
from typing import List, Optional

from config.scenario_loader import load_scenario, preset_scenario, scenario_from_dict
from config.settings import (DEFAULT_SWEEP_N_MAX, DEFAULT_SWEEP_SEEDS, EXIT_BUDGET, EXIT_INVARIANT, EXIT_OK,
    FAIL, MAX_ORACLE_STATES, TOOL_NAME, TOOL_VERSION)
from models.data_models import Scenario
from runner.runner import parse_check, run_attractors, run_cr, run_duality, run_oracle_sweep
from utils.errors import ChainScoutError, ConfigError
from utils.logger import logger


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--out", type=Path, default=None, help="output directory (overrides the scenario)")
    p.add_argument("--threads", type=int, default=None, help="worker count for internal parallelism")
    p.add_argument("--seed", type=int, default=None, help="seed for sampled checks")
    p.add_argument("--quiet", action="store_true", help="no log lines on stderr")
    return p


def _scenario_args(p: argparse.ArgumentParser):
    src = p.add_mutually_exclusive_group()
    src.add_argument("--scenario", type=Path, help="scenario JSON file")
    src.add_argument("--preset", help="named preset from config/scenarios.py")
    p.add_argument("--depth", type=int, default=None, help="grid depth override")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog=TOOL_NAME, description="Chain recurrence, attractors and duality "
                                     "for finitely generated semigroups of plane maps.")
    parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {TOOL_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (("cr", "outer approximation of CR and its chain components"),
                           ("attractors", "trapping regions, attractors and basins"),
                           ("duality", "cr + attractors + the complement/basin comparison")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        _scenario_args(p)
        p.set_defaults(func=cmd_stage)
    p = sub.add_parser("oracle", parents=[common], help="exact property sweep over random finite systems")
    p.add_argument("--seeds", type=int, default=DEFAULT_SWEEP_SEEDS)
    p.add_argument("--n-max", type=int, default=DEFAULT_SWEEP_N_MAX)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--abelian-only", dest="abelian_only", action="store_true", default=True)
    mode.add_argument("--include-nonabelian", dest="abelian_only", action="store_false")
    p.set_defaults(func=cmd_oracle)
    p = sub.add_parser("parse-check", parents=[common], help="parse and print generator expressions")
    _scenario_args(p)
    p.add_argument("--expr", action="append", default=[], help="expression to check (repeatable)")
    p.set_defaults(func=cmd_parse_check)
    return parser


def load_from_args(args) -> Scenario:
    overrides = {}
    if args.depth is not None: overrides["depth"] = args.depth
    if args.seed is not None: overrides["seed"] = args.seed
    if args.threads is not None: overrides["threads"] = args.threads
    if args.out is not None: overrides["output_dir"] = str(args.out)
    if args.preset: return preset_scenario(args.preset, **overrides)
    if args.scenario is None: raise ConfigError("one of --scenario or --preset is required", "scenario")
    s = load_scenario(args.scenario)
    if overrides: s = scenario_from_dict(dict(s.to_dict(), **overrides))
    return s


def cmd_stage(args) -> int:
    s = load_from_args(args)
    run = {"cr": run_cr, "attractors": run_attractors, "duality": run_duality}[args.command]
    rep = run(s)
    parts = [f"{args.command}: scenario {s.name}"]
    if rep.cr: parts.append(f"CR {rep.cr['cells']} cells")
    if rep.components: parts.append(f"{rep.components['count']} components")
    if rep.certificates:
        parts.append(f"{sum(c['status'] == 'certified' for c in rep.certificates)}/{len(rep.certificates)} certified")
    if rep.duality: parts.append(f"duality {rep.duality['verdict']}")
    print(", ".join(parts) + f" -> {s.output_dir}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.n_max < 1 or args.n_max > MAX_ORACLE_STATES:
        raise ConfigError(f"must be in 1..{MAX_ORACLE_STATES}", "n-max")
    if args.seeds < 1: raise ConfigError("must be >= 1", "seeds")
    out = args.out if args.out is not None else Path("out")
    summary = run_oracle_sweep(args.seeds, args.n_max, args.abelian_only, args.seed or 0, out, args.threads or 1)
    print(f"oracle: {summary['systems']} systems, {len(summary['failures'])} failures, "
          f"{len(summary['skipped_seeds'])} skipped -> {summary['verdict']}")
    if summary["skipped_seeds"]: return EXIT_BUDGET
    return EXIT_INVARIANT if summary["verdict"] == FAIL else EXIT_OK


def cmd_parse_check(args) -> int:
    sources = list(args.expr)
    if not sources: sources = load_from_args(args).generators
    for src in parse_check(sources): print(src)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logger.quiet = bool(args.quiet)
    try:
        return args.func(args)
    except ChainScoutError as exc:
        logger.log(f"[ERROR] {type(exc).__name__}: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except Exception as exc:
        logger.log(f"[ERROR] unexpected {type(exc).__name__}: {exc}\n{traceback.format_exc()}")
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    finally:
        logger.detach_file()
