"""Solver for epistemic specifications: answer-set programs with K and M."""

from .errors import (
    EpispecError, ExternalSolverError, GroundingError, ParseError, ResourceLimitExceeded,
    TransformError,
)
from .grounder import ground
from .parser import parse
from .syntax import (
    Atom, Literal, Modality, Program, Rule, SubjectiveLiteral, complement, program_literals,
    sorted_world_views,
)
from .transform import CoreProgram, gelfond_to_core, project, to_core
from .worldview import SolveOptions, is_world_view, solve, solve_basic

__version__ = "0.1.0"

__all__ = [
    "Atom", "CoreProgram", "EpispecError", "ExternalSolverError", "GroundingError", "Literal",
    "Modality", "ParseError", "Program", "ResourceLimitExceeded", "Rule", "SolveOptions",
    "SubjectiveLiteral", "TransformError", "complement", "gelfond_to_core", "ground",
    "is_world_view", "parse", "program_literals", "project", "solve", "solve_basic", "to_core",
    "world_views",
]


def world_views(text: str, options: SolveOptions | None = None) -> list:
    """Parse, ground, translate and solve ``text``; world views over its own literals."""
    core = to_core(ground(parse(text)))
    return sorted_world_views(project(solve(core, options), core.original_lits))
