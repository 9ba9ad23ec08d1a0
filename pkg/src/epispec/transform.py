"""Rewriting arbitrary subjective literals into K l / -K l."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import TransformError
from .syntax import (
    Atom, Literal, Modality, Program, Rule, SubjectiveLiteral, dedupe,
    program_literals, sorted_literals,
)

FRESH_PREFIX = "aux_k_"
FRESH_NEG_PREFIX = "aux_kn_"


@dataclass(frozen=True)
class CoreProgram:
    program: Program
    fresh_map: dict = field(default_factory=dict)  # l -> l'
    original_lits: frozenset = frozenset()


def fresh_literal(l: Literal) -> Literal:
    prefix = FRESH_NEG_PREFIX if l.negated else FRESH_PREFIX
    return Literal(Atom(prefix + l.atom.predicate, l.atom.args))


# (modality, inner "not") -> (core modality, uses fresh literal)
_TABLE = {
    (Modality.NOT_K, True): (Modality.NOT_K, True),
    (Modality.M, False): (Modality.NOT_K, True),
    (Modality.NOT_M, False): (Modality.K, True),
    (Modality.K, True): (Modality.K, True),
    (Modality.M, True): (Modality.NOT_K, False),
    (Modality.NOT_M, True): (Modality.K, False),
}


def to_core(program: Program) -> CoreProgram:
    """Translate into core form with one shared fresh literal per objective literal."""
    lits = program_literals(program)
    fresh = {}

    def rewrite(s: SubjectiveLiteral) -> SubjectiveLiteral:
        if s.is_core:
            return s
        modality, use_fresh = _TABLE[s.modality, s.inner_negated]
        target = s.literal
        if use_fresh:
            if s.literal not in fresh:
                fresh[s.literal] = fresh_literal(s.literal)
            target = fresh[s.literal]
        return SubjectiveLiteral(modality, target)

    rules = []
    for r in program.rules:
        if all(s.is_core for s in r.body_subj):
            rules.append(r)
        else:
            rules.append(Rule(r.head, r.body_pos, r.body_neg,
                              dedupe(rewrite(s) for s in r.body_subj), r.choice))
    clash = set(fresh.values()) & lits
    if clash:
        raise TransformError("fresh literal collides with program literal: %s" % min(map(str, clash)))
    for l in sorted_literals(fresh):
        rules.append(Rule(head=(fresh[l],), body_neg=(l,)))
    return CoreProgram(Program(tuple(rules), program.constants), dict(fresh), lits)


GELFOND_FORMS = {
    (Modality.K, False), (Modality.NOT_K, False),
    (Modality.K, True), (Modality.NOT_K, True),
    (Modality.M, False),
}


def check_gelfond_language(program: Program):
    for r in program.rules:
        for s in r.body_subj:
            if (s.modality, s.inner_negated) not in GELFOND_FORMS:
                raise TransformError("subjective literal %s is outside K/-K/K not/-K not/M" % s)


def gelfond_to_core(program: Program) -> CoreProgram:
    check_gelfond_language(program)
    return to_core(program)


def project(world_views, lits) -> frozenset:
    """Restrict every belief set to ``lits``; duplicates collapse."""
    lits = frozenset(lits)
    return frozenset(frozenset(b & lits for b in w) for w in world_views)
