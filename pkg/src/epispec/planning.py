"""Conformant planning as world-view computation.

A planning domain (actions, causal and inertia laws, possible initial states,
a ``goal(T)`` rule) is combined with a module that guesses one action per
step and requires every belief set to agree on the actions, never make the
plan non-executable or a state inconsistent, and reach the goal.  Each world
view then corresponds to one secure plan.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .grounder import ground
from .parser import parse
from .syntax import sorted_literals, term_key
from .transform import to_core
from .worldview import SolveOptions, solve

MODULE_TEMPLATE = """\
#const x={m}.
step(0..{m}).
1{{o(A,T):action(A)}}1 :- step(T), T<{m}.
:- M nonexecutable.
:- M inconsistent.
success :- goal({m}).
:- -K success.
:- -K o(A,T), o(A,T).
"""


@dataclass(frozen=True)
class PlanningJob:
    domain_text: str
    horizon: int


@dataclass(frozen=True)
class SecurePlan:
    actions: tuple  # ((action term, step), ...) ordered by step

    def lines(self):
        return ["%d: %s" % (t, a) for a, t in self.actions]


def emit_conformant_module(m: int) -> str:
    if m < 1:
        raise ValueError("horizon must be at least 1")
    return MODULE_TEMPLATE.format(m=m)


def corpus_text(name: str) -> str:
    return resources.files("epispec.corpus").joinpath(name).read_text(encoding="utf-8")


def _occurrences(world_view):
    common = frozenset.intersection(*world_view)
    occ = [l for l in common if l.atom.predicate == "o" and not l.negated and len(l.atom.args) == 2]
    return sorted_literals(occ)


def plan_from_world_view(world_view) -> SecurePlan:
    pairs = [(l.atom.args[0], l.atom.args[1]) for l in _occurrences(world_view)]
    pairs.sort(key=lambda p: (term_key(p[1]), term_key(p[0])))
    return SecurePlan(tuple(pairs))


def conformant_world_views(job: PlanningJob, options: SolveOptions | None = None) -> list:
    program = ground(parse(job.domain_text + "\n" + emit_conformant_module(job.horizon)))
    core = to_core(program)
    return [frozenset(frozenset(b & core.original_lits) for b in w) for w in solve(core, options)]


def solve_conformant(job: PlanningJob, options: SolveOptions | None = None) -> list[SecurePlan]:
    plans = []
    for w in conformant_world_views(job, options):
        plan = plan_from_world_view(w)
        steps = [t for _, t in plan.actions]
        if steps != list(range(job.horizon)):
            raise AssertionError("world view does not fix one action per step: %s" % plan)
        plans.append(plan)
    return plans
