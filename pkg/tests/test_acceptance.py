"""Acceptance criteria, one test each; run directly for a plain report."""

import random

from acceptance_report import criterion
from epispec.asp import GroundAspProgram, answer_sets, brute_force_answer_sets
from epispec.grounder import ground
from epispec.oracle import brute_force_world_views, gelfond_world_views_oracle
from epispec.parser import parse
from epispec.planning import (
    PlanningJob, conformant_world_views, corpus_text, emit_conformant_module, solve_conformant,
)
from epispec.syntax import complement, sorted_world_views
from epispec.transform import gelfond_to_core, project, to_core
from epispec.worldview import Contradiction, PartialModel, lower_bound, solve, solve_basic
from helpers import (
    ALL_FORMS, GELFOND_FORMS, L, W, initial_states, is_secure, random_asp_program,
    random_epistemic_program, secure_plans,
)

DOMAIN = corpus_text("conformant_domain.es")


def world_views_of(text):
    core = to_core(ground(parse(text)))
    return sorted_world_views(project(solve(core), core.original_lits))


def corpus():
    """(name, core program) for every corpus program."""
    progs = [(name, corpus_text(name + ".es"))
             for name in ("both_unknown", "not_possible", "possible_guard", "self_support", "dinner")]
    progs.append(("planning m=2", DOMAIN + "\n" + emit_conformant_module(2)))
    return [(name, to_core(ground(parse(text)))) for name, text in progs]


def test_criterion_01_both_unknown():
    with criterion(1, "both_unknown: world views {{p}} and {{q}}", budget=1.0):
        assert world_views_of(corpus_text("both_unknown.es")) == [W({"p"}), W({"q"})]


def test_criterion_02_not_possible():
    with criterion(2, "not_possible: world views {{q}} and {{p}}", budget=1.0):
        assert world_views_of(corpus_text("not_possible.es")) == [W({"p"}), W({"q"})]


def test_criterion_03_possible_guard():
    with criterion(3, "possible_guard: world views {{}} and {{p},{q}}", budget=1.0):
        assert world_views_of(corpus_text("possible_guard.es")) == [W(set()), W({"p"}, {"q"})]


def test_criterion_04_self_support():
    with criterion(4, "self_support: world views {{}} and {{p}}, both routes", budget=1.0):
        text = corpus_text("self_support.es")
        expected = [W(set()), W({"p"})]
        assert world_views_of(text) == expected
        prog = ground(parse(text))
        assert gelfond_world_views_oracle(prog) == expected
        core = gelfond_to_core(prog)
        assert sorted_world_views(project(solve(core), core.original_lits)) == expected


def test_criterion_05_conformant_planning():
    with criterion(5, "planning m=2: one world view, 12 belief sets, plan a b", budget=60.0):
        ws = conformant_world_views(PlanningJob(DOMAIN, 2))
        assert len(ws) == 1
        (w,) = ws
        assert len(w) == 12
        assert all(L("o(a,0)") in b and L("o(b,1)") in b for b in w)
        plans = solve_conformant(PlanningJob(DOMAIN, 2))
        assert [[str(a) for a, _ in p.actions] for p in plans] == [["a", "b"]]


def test_criterion_06_dinner():
    with criterion(6, "dinner problem unique world view", budget=5.0):
        expected = [W({"checkov", "tommy", "scotty", "jim", "mike"},
                      {"checkov", "tommy", "scotty", "jim", "jack"})]
        assert world_views_of(corpus_text("dinner.es")) == expected


def test_criterion_07_oracle_equivalence():
    with criterion(7, "500+500 random programs vs brute-force and fragment oracles"):
        rng = random.Random(20240607)
        mismatches = 0
        for _ in range(500):
            prog = random_epistemic_program(rng, forms=ALL_FORMS, max_rules=6, max_lits=4)
            core = to_core(prog)
            if brute_force_world_views(prog) != sorted_world_views(project(solve(core), core.original_lits)):
                mismatches += 1
        for _ in range(500):
            prog = random_epistemic_program(rng, forms=GELFOND_FORMS, max_rules=6, max_lits=4)
            core = gelfond_to_core(prog)
            if gelfond_world_views_oracle(prog) != sorted_world_views(project(solve(core), core.original_lits)):
                mismatches += 1
        assert mismatches == 0, "%d mismatches" % mismatches


def test_criterion_08_solve_equals_solve_basic():
    with criterion(8, "solve = solve_basic on corpus and 300 random programs"):
        cases = [core for _, core in corpus()]
        rng = random.Random(8)
        cases += [to_core(random_epistemic_program(rng)) for _ in range(300)]
        mismatches = sum(1 for core in cases if solve(core) != solve_basic(core))
        assert mismatches == 0, "%d mismatches" % mismatches


def test_criterion_09_lower_bound_partial_models():
    with criterion(9, "lower_bound iterates are partial models on the corpus"):
        violations = 0
        for name, core in corpus():
            ws = solve_basic(core)
            commons = [frozenset.intersection(*w) for w in ws]
            pm, seen = PartialModel(), set()
            while pm not in seen:
                seen.add(pm)
                try:
                    pm = lower_bound(core, pm)
                except Contradiction:
                    violations += bool(ws)
                    break
                violations += sum(1 for c in commons if not pm.known <= c or pm.not_known & c)
        assert violations == 0, "%d violations" % violations


def test_criterion_10_asp_oracle():
    with criterion(10, "600 random ASP programs vs brute force, antichains"):
        rng = random.Random(10)
        mismatches = violations = 0
        for i in range(600):
            prog = GroundAspProgram.from_program(
                random_asp_program(rng, max_atoms=10, max_rules=12, choice=i % 2 == 0))
            got = answer_sets(prog)
            mismatches += got != brute_force_answer_sets(prog)
            full = answer_sets(prog, show_aux=True)
            mismatches += full != brute_force_answer_sets(prog, show_aux=True)
            # the compiled program always yields an antichain; without choice
            # rules the visible sets coincide with it
            for sets in ([full] if prog.cardinality else [full, got]):
                for x in sets:
                    violations += any(complement(l) in x for l in x)
                    violations += sum(1 for y in sets if x < y)
        assert mismatches == 0 and violations == 0, "%d mismatches, %d violations" % (mismatches, violations)


def test_criterion_11_plans_simulate():
    with criterion(11, "extracted plans secure from all 12 initial states"):
        assert len(list(initial_states())) == 12
        for m in (1, 2, 3):
            plans = [tuple(str(a) for a, _ in p.actions) for p in solve_conformant(PlanningJob(DOMAIN, m))]
            assert all(is_secure(p) for p in plans)
            assert plans == secure_plans(m)
        assert plans


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except Exception:  # line already printed
                failed += 1
    sys.exit(1 if failed else 0)
