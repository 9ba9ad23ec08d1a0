import functools

from hypothesis import given, strategies as st

from epispec.syntax import (
    Atom, Function, Literal, Program, Rule, canonical_order, complement,
    program_literals,
)
from epispec.parser import parse
from helpers import L, S, gp


def test_complement_examples():
    assert complement(L("p")) == L("-p")
    assert complement(L("-p")) == L("p")
    assert complement(L("q(1,f(a))")) == L("-q(1,f(a))")
    assert L("-q(1,f(a))").atom == Atom("q", (1, Function("f", ("a",))))


def test_program_literals_examples():
    assert program_literals(gp("p or q.")) == S("p", "q")
    assert program_literals(gp("p or q. p :- -K q. q :- -K p.")) == S("p", "q")
    assert program_literals(Program()) == frozenset()


def test_program_literals_sees_every_position():
    prog = parse("a :- b, not c, K d, -M not e. 1{f, g}1 :- h.")
    assert program_literals(prog) == S(*"abcdefgh")


def test_canonical_order_examples():
    assert canonical_order(L("p"), L("q")) < 0
    assert canonical_order(S("q"), S("p")) > 0
    assert canonical_order(L("-p"), L("p")) > 0
    assert canonical_order(L("p(2)"), L("p(a)")) < 0
    assert canonical_order(L("p(a)"), L("p(f(a))")) < 0


terms = st.recursive(
    st.integers(0, 3) | st.sampled_from(["a", "b"]),
    lambda inner: st.builds(lambda n, args: Function(n, tuple(args)),
                            st.sampled_from(["f", "g"]), st.lists(inner, min_size=1, max_size=2)),
    max_leaves=4)
literals = st.builds(lambda p, args, neg: Literal(Atom(p, tuple(args)), neg),
                     st.sampled_from(["p", "q", "pq"]), st.lists(terms, max_size=2), st.booleans())


@given(literals)
def test_complement_is_involution(l):
    assert complement(complement(l)) == l
    assert complement(l) != l


@given(literals, literals, literals)
def test_canonical_order_is_total_order(x, y, z):
    assert canonical_order(x, x) == 0
    assert canonical_order(x, y) == -canonical_order(y, x)
    assert (canonical_order(x, y) == 0) == (x == y)
    if canonical_order(x, y) <= 0 and canonical_order(y, z) <= 0:
        assert canonical_order(x, z) <= 0


@given(st.lists(literals, max_size=6))
def test_canonical_sort_is_deterministic(ls):
    key = functools.cmp_to_key(canonical_order)
    assert sorted(ls, key=key) == sorted(reversed(ls), key=key)


@given(st.lists(st.lists(literals, max_size=3), max_size=4), st.lists(literals, max_size=3))
def test_program_literals_monotone(rule_bodies, extra):
    rules = tuple(Rule(head=tuple(b[:1]), body_pos=tuple(b[1:])) for b in rule_bodies)
    base = Program(rules)
    grown = Program(rules + (Rule(body_pos=tuple(extra)),))
    assert program_literals(base) <= program_literals(grown)
