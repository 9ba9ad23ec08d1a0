"""Shared test utilities: random program generators and a planning simulator."""

import itertools
import random

from epispec.grounder import ground
from epispec.parser import parse
from epispec.syntax import (
    Atom, ChoiceElement, ChoiceHead, Literal, Modality, Program, Rule,
    SubjectiveLiteral, dedupe,
)

ALL_FORMS = [(m, inner) for m in Modality for inner in (False, True)]
GELFOND_FORMS = [(Modality.K, False), (Modality.NOT_K, False), (Modality.K, True),
                 (Modality.NOT_K, True), (Modality.M, False)]
CORE_FORMS = [(Modality.K, False), (Modality.NOT_K, False)]


def L(text):
    """Literal from text, e.g. L("-q(1,f(a))")."""
    return parse(text + ".", allow_reserved=True).rules[0].head[0]


def S(*texts):
    return frozenset(L(t) for t in texts if t)


def W(*belief_sets):
    return frozenset(S(*b) for b in belief_sets)


def gp(text):
    """Parse and ground."""
    return ground(parse(text, allow_reserved=True))


def literal_pool(rng, max_lits=4):
    names = ["p", "q", "r", "s"]
    n = rng.randint(1, max_lits)
    lits = [Literal(Atom(x)) for x in names[:n]]
    if n >= 2 and rng.random() < 0.25:
        # classical negation of an existing atom in place of the last one
        lits[-1] = Literal(lits[0].atom, True)
    return lits


def random_epistemic_program(rng, forms=ALL_FORMS, max_rules=6, max_lits=4):
    pool = literal_pool(rng, max_lits)
    rules = []
    for _ in range(rng.randint(1, max_rules)):
        hs = rng.choices([0, 1, 2], weights=[2, 6, 2])[0]
        head = dedupe(rng.sample(pool, min(hs, len(pool))))
        pos = dedupe(rng.choice(pool) for _ in range(rng.choices([0, 1, 2], weights=[5, 4, 1])[0]))
        neg = dedupe(rng.choice(pool) for _ in range(rng.choices([0, 1, 2], weights=[4, 4, 1])[0]))
        subj = dedupe(SubjectiveLiteral(*_form(rng, forms, pool))
                      for _ in range(rng.choices([0, 1, 2], weights=[3, 5, 2])[0]))
        rules.append(Rule(head=head, body_pos=pos, body_neg=neg, body_subj=subj))
    return Program(tuple(rules))


def _form(rng, forms, pool):
    modality, inner = rng.choice(forms)
    return modality, rng.choice(pool), inner


def random_asp_program(rng, max_atoms=10, max_rules=12, choice=True):
    names = ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j"][:rng.randint(1, max_atoms)]
    pool = [Literal(Atom(x)) for x in names]
    if len(pool) > 2 and rng.random() < 0.3:
        pool[-1] = Literal(pool[0].atom, True)
    rules = []
    for _ in range(rng.randint(1, max_rules)):
        body_pos = dedupe(rng.choice(pool) for _ in range(rng.choices([0, 1, 2], weights=[4, 4, 2])[0]))
        body_neg = dedupe(rng.choice(pool) for _ in range(rng.choices([0, 1, 2], weights=[4, 4, 2])[0]))
        if choice and rng.random() < 0.1:
            elems = dedupe(rng.sample(pool, rng.randint(1, min(3, len(pool)))))
            lo = rng.randint(0, len(elems))
            hi = rng.randint(lo, len(elems))
            rules.append(Rule(choice=ChoiceHead(lo, hi, tuple(ChoiceElement(e) for e in elems)),
                              body_pos=body_pos, body_neg=body_neg))
            continue
        hs = rng.choices([0, 1, 2, 3], weights=[1, 7, 2, 1])[0]
        head = dedupe(rng.sample(pool, min(hs, len(pool))))
        rules.append(Rule(head=head, body_pos=body_pos, body_neg=body_neg))
    return Program(tuple(rules))


def random_programs(seed, count, factory, **kwargs):
    rng = random.Random(seed)
    return [factory(rng, **kwargs) for _ in range(count)]


# direct state-transition interpreter for the conformant planning domain

FLUENTS = ("p", "q", "r", "s")


def initial_states():
    for values in itertools.product((True, False), repeat=4):
        state = dict(zip(FLUENTS, values))
        if state["p"] or state["q"]:
            yield state


def step(state, action):
    """Apply one action; returns (executable, legal, successor)."""
    pos, neg = set(), set()
    if action == "a":
        if state["p"]:
            pos.add("q")
        if state["r"]:
            neg.add("s")
    elif action == "b":
        if state["q"]:
            pos.add("s")
    else:
        return False, False, state
    if pos & neg:
        return True, False, state
    succ = dict(state)
    for f in pos:
        succ[f] = True
    for f in neg:
        succ[f] = False
    return True, True, succ


def is_secure(plan, goal=("q", "s")):
    """All three security conditions from every initial state."""
    for state in initial_states():
        for action in plan:
            executable, legal, state = step(state, action)
            if not (executable and legal):
                return False
        if not all(state[g] for g in goal):
            return False
    return True


def secure_plans(horizon, actions=("a", "b")):
    return [plan for plan in itertools.product(actions, repeat=horizon) if is_secure(plan)]
