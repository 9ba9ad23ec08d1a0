"""Brute-force world-view oracles for small programs.

Both oracles enumerate candidate collections of consistent subsets of the
program's literals and test each candidate directly against a reduct
definition, computing answer sets by exhaustive subset testing.  Only
antichains are enumerated: the answer sets of any program are pairwise
incomparable, so no other collection can equal the answer sets of a reduct.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from . import asp
from .errors import ResourceLimitExceeded
from .syntax import Modality, Program, Rule, complement, dedupe, program_literals, sorted_literals, sorted_world_views
from .transform import check_gelfond_language, project, to_core
from .worldview import is_world_view, satisfies

DEFAULT_CAP = 4


def consistent_subsets(lits) -> list[frozenset]:
    lits = sorted_literals(lits)
    out = []
    for mask in range(1 << len(lits)):
        s = frozenset(l for i, l in enumerate(lits) if mask >> i & 1)
        if not any(complement(l) in s for l in s):
            out.append(s)
    return out


def antichains(pool):
    """Non-empty antichains (w.r.t. subset) drawn from ``pool``."""
    pool = list(pool)

    def extend(start, chosen):
        for i in range(start, len(pool)):
            c = pool[i]
            if all(not (c <= x or x <= c) for x in chosen):
                grown = chosen + [c]
                yield frozenset(grown)
                yield from extend(i + 1, grown)

    return extend(0, [])


def all_collections(pool):
    pool = list(pool)
    for n in range(1, len(pool) + 1):
        for combo in itertools.combinations(pool, n):
            yield frozenset(combo)


def _candidates(program: Program, cap: int, exhaustive: bool):
    lits = program_literals(program)
    if len(lits) > cap:
        raise ResourceLimitExceeded("%d literals exceed oracle cap %d" % (len(lits), cap))
    pool = consistent_subsets(lits)
    return all_collections(pool) if exhaustive else antichains(pool)


def _cached_answer_sets():
    @lru_cache(maxsize=None)
    def answer_sets(reduct: Program):
        return tuple(asp.brute_force_answer_sets(reduct))

    return answer_sets


def brute_force_world_views(program: Program, cap: int = DEFAULT_CAP, exhaustive: bool = False) -> list:
    """World views of a ground program with arbitrary subjective literals.

    Candidates over the original literals are extended with the fresh literals
    of the core translation and checked against the core program's reduct.
    """
    core = to_core(program)
    solve_as = _cached_answer_sets()
    found = []
    for w in _candidates(program, cap, exhaustive):
        extended = frozenset(b | {core.fresh_map[l] for l in core.fresh_map if l not in b} for b in w)
        if is_world_view(core.program, extended, answer_sets=solve_as):
            found.append(extended)
    return sorted_world_views(project(found, core.original_lits))


def gelfond_reduct(program: Program, world_view) -> Program:
    rules = []
    for r in program.rules:
        if not all(satisfies(world_view, s) for s in r.body_subj):
            continue
        pos = list(r.body_pos)
        neg = list(r.body_neg)
        for s in r.body_subj:
            if s.modality is Modality.K:
                (neg if s.inner_negated else pos).append(s.literal)
        rules.append(Rule(r.head, dedupe(pos), dedupe(neg), (), r.choice))
    return Program(tuple(rules))


def gelfond_world_views_oracle(program: Program, cap: int = DEFAULT_CAP, exhaustive: bool = False) -> list:
    """World views under the K / K not / M reduct, without any translation."""
    check_gelfond_language(program)
    solve_as = _cached_answer_sets()
    found = []
    for w in _candidates(program, cap, exhaustive):
        if frozenset(solve_as(gelfond_reduct(program, w))) == w:
            found.append(w)
    return sorted_world_views(found)
