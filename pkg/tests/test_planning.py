import pytest

from epispec.grounder import ground
from epispec.parser import parse
from epispec.planning import (
    PlanningJob, SecurePlan, conformant_world_views, corpus_text, emit_conformant_module,
    plan_from_world_view, solve_conformant,
)
from helpers import L, is_secure, secure_plans

DOMAIN = corpus_text("conformant_domain.es")


def test_module_text():
    text = emit_conformant_module(2)
    assert "step(0..2)." in text
    assert "success :- goal(2)." in text
    assert "1{o(A,T):action(A)}1 :- step(T), T<2." in text
    assert len(parse(text).rules) == 7


def test_module_reparses_to_same_program():
    prog = parse(emit_conformant_module(3))
    assert parse(str(prog)) == prog


def test_module_rejects_zero_horizon():
    with pytest.raises(ValueError):
        emit_conformant_module(0)


def test_horizon_one_has_single_generation_step():
    prog = parse(DOMAIN + emit_conformant_module(1))
    choices = [r for r in ground(prog).rules if r.choice is not None
               and r.choice.elements[0].literal.atom.predicate == "o"]
    assert len(choices) == 1


def test_horizon_two_plan():
    ws = conformant_world_views(PlanningJob(DOMAIN, 2))
    assert len(ws) == 1
    (w,) = ws
    assert len(w) == 12
    assert all(L("o(a,0)") in b and L("o(b,1)") in b for b in w)
    plans = solve_conformant(PlanningJob(DOMAIN, 2))
    assert plans == [SecurePlan((("a", 0), ("b", 1)))]
    assert plans[0].lines() == ["0: a", "1: b"]


def test_horizon_one_has_no_plan():
    assert solve_conformant(PlanningJob(DOMAIN, 1)) == []
    assert secure_plans(1) == []


def test_plans_agree_with_simulator():
    for m in (1, 2):
        plans = solve_conformant(PlanningJob(DOMAIN, m))
        found = [tuple(a for a, _ in p.actions) for p in plans]
        assert found == secure_plans(m)
        assert all(is_secure(p) for p in found)


def test_occurrences_agree_across_belief_sets():
    (w,) = conformant_world_views(PlanningJob(DOMAIN, 2))
    occ = [frozenset(l for l in b if l.atom.predicate == "o") for b in w]
    assert len(set(occ)) == 1
    assert plan_from_world_view(w).actions == (("a", 0), ("b", 1))
