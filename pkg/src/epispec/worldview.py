"""World views of core-form epistemic specifications.

A world view is a ``frozenset`` of belief sets, each a ``frozenset`` of
literals.  ``solve_basic`` enumerates every assignment of the epistemic
literals; ``solve`` first simplifies the program with the lower-bound operator
and re-runs that simplification on each assignment reduct.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import asp
from .syntax import (
    Modality, Program, Rule, SubjectiveLiteral, complement, dedupe,
    program_literals, sorted_literals, sorted_world_views,
)
from .transform import CoreProgram

log = logging.getLogger(__name__)


class Contradiction(Exception):
    """The current partial model admits no world view."""


@dataclass(frozen=True)
class Assignment:
    known: frozenset  # S: believed in every belief set
    not_known: frozenset  # S'


@dataclass(frozen=True)
class PartialModel:
    known: frozenset = frozenset()
    not_known: frozenset = frozenset()


@dataclass(frozen=True)
class SolveOptions:
    jobs: int = 1
    budget: int | None = None
    external_solver: str | None = None
    show_aux: bool = False


def _program(p) -> Program:
    return p.program if isinstance(p, CoreProgram) else p


def epistemic_literals(program) -> frozenset:
    return frozenset(s.literal for r in _program(program).rules for s in r.body_subj)


def satisfies(world_view, s: SubjectiveLiteral) -> bool:
    """Truth of a subjective literal (any of the eight forms) in a world view."""
    if not world_view:
        raise ValueError("world views are non-empty")
    l = s.literal
    if s.modality in (Modality.K, Modality.NOT_K):
        if s.inner_negated:
            value = all(l not in b for b in world_view)
        else:
            value = all(l in b for b in world_view)
        return value if s.modality is Modality.K else not value
    if s.inner_negated:
        value = any(l not in b for b in world_view)
    else:
        value = any(l in b for b in world_view)
    return value if s.modality is Modality.M else not value


def _require_core(rule: Rule):
    for s in rule.body_subj:
        if not s.is_core:
            raise ValueError("rule is not in core form: %s" % rule)


def _reduce(program: Program, satisfied) -> Program:
    rules = []
    for r in program.rules:
        _require_core(r)
        if not all(satisfied(s) for s in r.body_subj):
            continue
        if not r.body_subj:
            rules.append(r)
            continue
        pos = dedupe(r.body_pos + r.body_k)
        rules.append(Rule(r.head, pos, r.body_neg, (), r.choice))
    return Program(tuple(rules))


def epistemic_reduct(program, world_view) -> Program:
    world_view = frozenset(world_view)
    return _reduce(_program(program), lambda s: satisfies(world_view, s))


def assignment_reduct(program, a: Assignment) -> Program:
    def satisfied(s):
        if s.modality is Modality.K:
            return s.literal not in a.not_known
        return s.literal not in a.known

    return _reduce(_program(program), satisfied)


def is_world_view(program, world_view, answer_sets=None) -> bool:
    world_view = frozenset(frozenset(b) for b in world_view)
    if not world_view:
        return False
    answer_sets = answer_sets or asp.answer_sets
    return frozenset(answer_sets(epistemic_reduct(program, world_view))) == world_view


def assignment_consistent(belief_sets, a: Assignment) -> bool:
    belief_sets = list(belief_sets)
    if not belief_sets:
        return False
    common = frozenset.intersection(*map(frozenset, belief_sets))
    return a.known <= common and not (a.not_known & common)


def assignments(lits):
    """Assignments of ``lits`` in canonical binary order (bit i set: i-th literal in S)."""
    lits = sorted_literals(lits)
    for mask in range(1 << len(lits)):
        known = frozenset(l for i, l in enumerate(lits) if mask >> i & 1)
        yield Assignment(known, frozenset(lits) - known)


# lower bound operator and simplification

def _body_plus(r: Rule):
    return r.body_pos + r.body_k


def _body_minus(r: Rule):
    return r.body_neg + r.body_not_k


def lower_bound(program, pm: PartialModel = PartialModel()) -> PartialModel:
    program = _program(program)
    s, s_prime = pm.known, pm.not_known
    known = set()
    supported = set()
    for r in program.rules:
        blocked = any(l in s_prime for l in _body_plus(r)) or any(l in s for l in _body_minus(r))
        if not blocked:
            supported.update(r.head_literals())
        if r.choice is None and len(r.head) == 1 \
                and all(l in s for l in _body_plus(r)) and all(l in s_prime for l in _body_minus(r)):
            known.add(r.head[0])
    not_known = program_literals(program) - supported
    known = frozenset(known)
    clash = known & not_known
    if clash:
        raise Contradiction("literal both derived and unsupported: %s" % sorted_literals(clash)[0])
    if any(complement(l) in known for l in known):
        raise Contradiction("complementary literals derived")
    return PartialModel(known, frozenset(not_known))


def is_defeated(r: Rule, pm: PartialModel) -> bool:
    return any(l in pm.not_known for l in _body_plus(r)) or any(l in pm.known for l in _body_minus(r))


def simplify(program, pm: PartialModel):
    """The program restricted by a partial model (same world views)."""
    core = program if isinstance(program, CoreProgram) else None
    program = _program(program)
    s, s_prime = pm.known, pm.not_known
    rules = []
    for r in program.rules:
        if is_defeated(r, pm):
            continue
        subj = tuple(x for x in r.body_subj
                     if not (x.modality is Modality.NOT_K and x.literal in s_prime)
                     and not (x.modality is Modality.K and x.literal in s))
        rules.append(Rule(r.head,
                          tuple(l for l in r.body_pos if l not in s),
                          tuple(l for l in r.body_neg if l not in s_prime),
                          subj, r.choice))
    rules += [Rule(head=(l,)) for l in sorted_literals(s)]
    rules += [Rule(body_pos=(l,)) for l in sorted_literals(s_prime)]
    out = Program(dedupe(rules), program.constants)
    if core is not None:
        return CoreProgram(out, core.fresh_map, core.original_lits)
    return out


def _has_empty_constraint(program: Program) -> bool:
    return any(r.is_constraint and r.is_fact for r in program.rules)


def preprocess(program):
    """Alternate lower_bound and simplify from (empty, empty) to a fixpoint.

    Raises :class:`Contradiction` when the program has no world view.
    """
    pm = PartialModel()
    while True:
        new = lower_bound(program, pm)
        program = simplify(program, new)
        if _has_empty_constraint(_program(program)):
            raise Contradiction("constraint with empty body")
        if new == pm:
            return program, pm
        pm = new


# solving

def _answer_sets(program: Program, options: SolveOptions):
    if options.external_solver:
        return asp.external_answer_sets(program, options.external_solver, budget=options.budget)
    return asp.answer_sets(program, budget=options.budget, show_aux=options.show_aux)


def _evaluate(program: Program, a: Assignment, options: SolveOptions, inner_preprocess: bool):
    reduct = assignment_reduct(program, a)
    if inner_preprocess:
        try:
            reduct, _ = preprocess(reduct)
        except Contradiction:
            return None
    w = _answer_sets(reduct, options)
    if w and assignment_consistent(w, a):
        return frozenset(w)
    return None


def _evaluate_chunk(args):
    program, chunk, options, inner = args
    return [_evaluate(program, a, options, inner) for a in chunk]


def _run(program: Program, options: SolveOptions, inner: bool) -> list:
    work = list(assignments(epistemic_literals(program)))
    log.debug("%d epistemic literals, %d assignments", len(epistemic_literals(program)), len(work))
    if options.jobs > 1 and len(work) > 1:
        size = -(-len(work) // options.jobs)
        chunks = [work[i:i + size] for i in range(0, len(work), size)]
        with ProcessPoolExecutor(max_workers=options.jobs) as pool:
            results = [w for part in pool.map(_evaluate_chunk,
                                              [(program, c, options, inner) for c in chunks])
                       for w in part]
    else:
        results = [_evaluate(program, a, options, inner) for a in work]
    return sorted_world_views({w for w in results if w is not None})


def solve_basic(program, options: SolveOptions | None = None) -> list:
    """Generate and test every assignment of the epistemic literals."""
    return _run(_program(program), options or SolveOptions(), inner=False)


def solve(program, options: SolveOptions | None = None) -> list:
    """Like :func:`solve_basic` after partial-model preprocessing."""
    try:
        reduced, _ = preprocess(_program(program))
    except Contradiction:
        return []
    return _run(reduced, options or SolveOptions(), inner=True)
