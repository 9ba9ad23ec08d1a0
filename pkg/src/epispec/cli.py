"""Command-line driver: parse, ground, transform, solve and print."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field

from .errors import (
    ExternalSolverError, GroundingError, ParseError, ResourceLimitExceeded, TransformError,
)
from .grounder import ground
from .oracle import DEFAULT_CAP, brute_force_world_views
from .parser import parse
from .planning import PlanningJob, solve_conformant
from .syntax import (
    Program, format_belief_set, sorted_belief_sets, sorted_literals, sorted_world_views,
)
from .transform import project, to_core
from .worldview import SolveOptions, solve, solve_basic

MODES = ("solve", "transform", "ground", "plan", "oracle")

EXIT_FOUND, EXIT_NONE, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


@dataclass
class RunConfig:
    inputs: list = field(default_factory=list)
    mode: str = "solve"
    horizon: int | None = None
    jobs: int = 1
    basic: bool = False
    oracle_cap: int = DEFAULT_CAP
    external_solver: str | None = None
    format: str = "text"
    budget: int | None = None
    show_aux: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError("unknown mode %r" % self.mode)
        if (self.mode == "plan") != (self.horizon is not None):
            raise ValueError("--horizon is required with, and only with, --mode=plan")


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as f:
        return f.read()


def _load(paths) -> Program:
    program = Program()
    for path in paths:
        try:
            program = program + parse(_read(path))
        except ParseError as e:
            raise ParseError(e.message, e.line, e.column, e.token, source=path) from None
    return program


def world_views_to_json(world_views) -> list:
    return [[[str(l) for l in sorted_literals(b)] for b in sorted_belief_sets(w)] for w in world_views]


def format_world_views(world_views) -> str:
    if not world_views:
        return "no world views\n"
    lines = []
    for k, w in enumerate(world_views, 1):
        lines.append("World view %d:" % k)
        lines.extend(format_belief_set(b) for b in sorted_belief_sets(w))
    return "\n".join(lines) + "\n"


def _world_views(config: RunConfig, options: SolveOptions):
    program = ground(_load(config.inputs))
    if config.mode == "oracle":
        return brute_force_world_views(program, cap=config.oracle_cap)
    core = to_core(program)
    ws = (solve_basic if config.basic else solve)(core, options)
    if config.show_aux:
        return ws
    return sorted_world_views(project(ws, core.original_lits))


def _execute(config: RunConfig, out) -> int:
    options = SolveOptions(jobs=config.jobs, budget=config.budget,
                           external_solver=config.external_solver, show_aux=config.show_aux)
    if config.mode in ("ground", "transform"):
        program = ground(_load(config.inputs))
        if config.mode == "transform":
            program = to_core(program).program
        if config.format == "json":
            out.write(json.dumps([str(r) for r in program.rules]) + "\n")
        else:
            out.write(str(program))
        return EXIT_FOUND
    if config.mode == "plan":
        domain = "\n".join(_read(p) for p in config.inputs)
        plans = solve_conformant(PlanningJob(domain, config.horizon), options)
        if config.format == "json":
            out.write(json.dumps([[{"step": t, "action": str(a)} for a, t in p.actions]
                                  for p in plans]) + "\n")
        elif not plans:
            out.write("no secure plans\n")
        else:
            for k, p in enumerate(plans, 1):
                if len(plans) > 1:
                    out.write("Plan %d:\n" % k)
                out.write("".join(line + "\n" for line in p.lines()))
        return EXIT_FOUND if plans else EXIT_NONE
    ws = _world_views(config, options)
    if config.format == "json":
        out.write(json.dumps(world_views_to_json(ws)) + "\n")
    else:
        out.write(format_world_views(ws))
    return EXIT_FOUND if ws else EXIT_NONE


def run(config: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        return _execute(config, out)
    except (ParseError, GroundingError, TransformError) as e:
        err.write("error: %s\n" % e)
        return EXIT_INPUT
    except OSError as e:
        err.write("error: %s\n" % e)
        return EXIT_INPUT
    except (ResourceLimitExceeded, ExternalSolverError) as e:
        err.write("error: %s\n" % e)
        return EXIT_RESOURCE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="epispec", description="Compute world views of epistemic specifications.")
    p.add_argument("inputs", nargs="+", metavar="FILE", help="input .es files, concatenated ('-' for stdin)")
    p.add_argument("--mode", choices=MODES, default="solve")
    p.add_argument("--horizon", type=int, help="planning horizon (mode=plan)")
    p.add_argument("--jobs", type=int, default=1, help="assignments evaluated in parallel")
    p.add_argument("--basic", action="store_true", help="disable partial-model preprocessing")
    p.add_argument("--oracle", action="store_true", help="same as --mode=oracle")
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_CAP, help="max literals for the oracle")
    p.add_argument("--external-solver", metavar="CMD",
                   help="external ASP solver command; {input} is replaced by the program file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--budget", type=int, help="search node budget per answer-set computation")
    p.add_argument("--show-aux", action="store_true", help="keep auxiliary literals in the output")
    p.add_argument("-v", "--verbose", action="count", default=0)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    mode = "oracle" if args.oracle else args.mode
    try:
        config = RunConfig(inputs=args.inputs, mode=mode, horizon=args.horizon, jobs=args.jobs,
                           basic=args.basic, oracle_cap=args.oracle_cap,
                           external_solver=args.external_solver, format=args.format,
                           budget=args.budget, show_aux=args.show_aux)
    except ValueError as e:
        sys.stderr.write("error: %s\n" % e)
        return EXIT_INPUT
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
