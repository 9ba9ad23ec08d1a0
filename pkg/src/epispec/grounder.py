"""Domain-restricted instantiation of non-ground programs.

The grounder first computes an over-approximation of the derivable literals
(every head instance whose positive body can be matched, ignoring default
negation and subjective literals), then instantiates each rule by joining its
positive body against that set.  Choice-element conditions must range over
domain predicates, i.e. predicates defined only by definite rules over other
domain predicates, so the over-approximation is exact for them.
"""

from __future__ import annotations

import itertools
from collections import defaultdict

from .errors import GroundingError
from .syntax import (
    Atom, BinOp, ChoiceElement, ChoiceHead, Comparison, Function, Interval,
    Literal, Program, Rule, SubjectiveLiteral, Variable, dedupe, literal_key,
    term_key, term_variables,
)


def _substitute_constants(t, consts: dict):
    if isinstance(t, str):
        return consts.get(t, t)
    if isinstance(t, Function):
        if not t.args and t.name in consts:
            return consts[t.name]
        return Function(t.name, tuple(_substitute_constants(a, consts) for a in t.args))
    if isinstance(t, BinOp):
        return BinOp(t.op, _substitute_constants(t.left, consts), _substitute_constants(t.right, consts))
    if isinstance(t, Interval):
        return Interval(_substitute_constants(t.low, consts), _substitute_constants(t.high, consts))
    return t


def _map_rule_terms(rule: Rule, f) -> Rule:
    def ml(l: Literal):
        return Literal(Atom(l.atom.predicate, tuple(f(a) for a in l.atom.args)), l.negated)

    choice = rule.choice
    if choice is not None:
        choice = ChoiceHead(
            f(choice.lower) if choice.lower is not None else None,
            f(choice.upper) if choice.upper is not None else None,
            tuple(ChoiceElement(ml(e.literal), tuple(ml(c) for c in e.condition))
                  for e in choice.elements))
    return Rule(
        head=tuple(ml(l) for l in rule.head),
        body_pos=tuple(ml(l) for l in rule.body_pos),
        body_neg=tuple(ml(l) for l in rule.body_neg),
        body_subj=tuple(SubjectiveLiteral(s.modality, ml(s.literal), s.inner_negated)
                        for s in rule.body_subj),
        choice=choice,
        comparisons=tuple(Comparison(c.op, f(c.left), f(c.right)) for c in rule.comparisons),
    )


def evaluate(t, binding: dict):
    """Evaluate a term under a variable binding to a ground term."""
    if isinstance(t, (int, str)):
        return t
    if isinstance(t, Variable):
        try:
            return binding[t.name]
        except KeyError:
            raise GroundingError("unbound variable %s" % t.name) from None
    if isinstance(t, Function):
        return Function(t.name, tuple(evaluate(a, binding) for a in t.args))
    if isinstance(t, BinOp):
        left, right = evaluate(t.left, binding), evaluate(t.right, binding)
        if not isinstance(left, int) or not isinstance(right, int):
            raise GroundingError("arithmetic on non-integer in %s" % t)
        return left + right if t.op == "+" else left - right
    if isinstance(t, Interval):
        raise GroundingError("interval %s outside a fact" % t)
    raise GroundingError("cannot evaluate %r" % (t,))


def _ground_literal(l: Literal, binding) -> Literal:
    return Literal(Atom(l.atom.predicate, tuple(evaluate(a, binding) for a in l.atom.args)), l.negated)


def _compare(op, a, b) -> bool:
    if op == "=":
        return a == b
    if op == "!=":
        return a != b
    if not isinstance(a, int) or not isinstance(b, int):
        raise GroundingError("comparison %s on non-integer operands %s, %s" % (op, a, b))
    return {"<": a < b, "<=": a <= b, ">": a > b, ">=": a >= b}[op]


def _match(pattern, value, binding: dict) -> dict | None:
    if isinstance(pattern, Variable):
        bound = binding.get(pattern.name)
        if bound is None:
            new = dict(binding)
            new[pattern.name] = value
            return new
        return binding if bound == value else None
    if isinstance(pattern, (int, str)):
        return binding if pattern == value else None
    if isinstance(pattern, Function):
        if not isinstance(value, Function) or value.name != pattern.name \
                or len(value.args) != len(pattern.args):
            return None
        for p, v in zip(pattern.args, value.args):
            binding = _match(p, v, binding)
            if binding is None:
                return None
        return binding
    if isinstance(pattern, BinOp):
        return binding if evaluate(pattern, binding) == value else None
    raise GroundingError("cannot match %s" % (pattern,))


def _arith_vars(t) -> set:
    """Variables occurring inside arithmetic (which cannot be bound by matching)."""
    if isinstance(t, BinOp):
        return term_variables(t)
    if isinstance(t, Function):
        out = set()
        for a in t.args:
            out |= _arith_vars(a)
        return out
    return set()


def _binding_vars(l: Literal) -> set:
    out = set()
    for a in l.atom.args:
        out |= term_variables(a) - _arith_vars(a)
    return out


class _Index:
    def __init__(self):
        self.by_sig = defaultdict(dict)

    def add(self, l: Literal) -> bool:
        bucket = self.by_sig[(l.atom.predicate, len(l.atom.args), l.negated)]
        if l in bucket:
            return False
        bucket[l] = None
        return True

    def candidates(self, l: Literal):
        return self.by_sig.get((l.atom.predicate, len(l.atom.args), l.negated), {})

    def __contains__(self, l):
        return l in self.candidates(l)

    def __len__(self):
        return sum(len(b) for b in self.by_sig.values())


def _join(literals, comparisons, index: _Index, binding: dict):
    """Yield every binding extending ``binding`` that matches ``literals`` in ``index``."""
    pending = list(literals)
    cmps = list(comparisons)
    ready = [c for c in cmps if c.variables() <= binding.keys()]
    for c in ready:
        if not _compare(c.op, evaluate(c.left, binding), evaluate(c.right, binding)):
            return
    cmps = [c for c in cmps if c not in ready]
    if not pending:
        if cmps:
            raise GroundingError("unbound variables in comparison %s" % cmps[0])
        yield binding
        return
    # pick the first literal whose arithmetic is evaluable, preferring fully bound ones
    chosen = None
    for l in pending:
        if _arith_vars_lit(l) <= binding.keys():
            if l.variables() <= binding.keys():
                chosen = l
                break
            if chosen is None:
                chosen = l
    if chosen is None:
        raise GroundingError("cannot bind variables of %s" % pending[0])
    pending.remove(chosen)
    if chosen.variables() <= binding.keys():
        if _ground_literal(chosen, binding) in index:
            yield from _join(pending, cmps, index, binding)
        return
    for cand in list(index.candidates(chosen)):
        b = binding
        for p, v in zip(chosen.atom.args, cand.atom.args):
            b = _match(p, v, b)
            if b is None:
                break
        if b is not None:
            yield from _join(pending, cmps, index, b)


def _arith_vars_lit(l: Literal) -> set:
    out = set()
    for a in l.atom.args:
        out |= _arith_vars(a)
    return out


def check_safety(rule: Rule):
    bound = set()
    for l in rule.body_pos:
        bound |= _binding_vars(l)

    def need(vs, where):
        missing = sorted(vs - bound)
        if missing:
            raise GroundingError("unsafe variable %s in %s of rule %s" % (missing[0], where, rule))

    for l in rule.head:
        need(l.variables(), "head")
    for l in rule.body_pos:
        need(l.variables(), "arithmetic term")
    for l in rule.body_neg:
        need(l.variables(), "negative body")
    for s in rule.body_subj:
        need(s.variables(), "subjective literal")
    for c in rule.comparisons:
        need(c.variables(), "comparison")
    if rule.choice is not None:
        for b in (rule.choice.lower, rule.choice.upper):
            if b is not None:
                need(term_variables(b), "choice bound")
        for e in rule.choice.elements:
            local = set(bound)
            for c in e.condition:
                local |= _binding_vars(c)
            missing = sorted((e.literal.variables() | set().union(*[c.variables() for c in e.condition]))
                             - local)
            if missing:
                raise GroundingError("unsafe variable %s in choice element %s" % (missing[0], e))


def _expand_intervals(rule: Rule) -> list[Rule]:
    def has_interval(t):
        if isinstance(t, Interval):
            return True
        if isinstance(t, (Function, BinOp)):
            parts = t.args if isinstance(t, Function) else (t.left, t.right)
            return any(has_interval(a) for a in parts)
        return False

    lits = rule.literals()
    if not any(has_interval(a) for l in lits for a in l.atom.args) and \
            not any(has_interval(c.left) or has_interval(c.right) for c in rule.comparisons):
        return [rule]
    if not (rule.is_fact and rule.choice is None and len(rule.head) == 1):
        raise GroundingError("interval terms are only allowed in facts: %s" % rule)
    head = rule.head[0]
    options = []
    for a in head.atom.args:
        if isinstance(a, Interval):
            lo, hi = evaluate(a.low, {}), evaluate(a.high, {})
            if not isinstance(lo, int) or not isinstance(hi, int):
                raise GroundingError("interval bounds must be integers: %s" % a)
            options.append(list(range(lo, hi + 1)))
        elif has_interval(a):
            raise GroundingError("nested interval in %s" % head)
        else:
            options.append([a])
    return [Rule(head=(Literal(Atom(head.atom.predicate, tuple(args)), head.negated),))
            for args in itertools.product(*options)]


def domain_signatures(rules) -> set:
    """Signatures defined only by definite rules over other domain signatures."""
    def sig(l):
        return (l.atom.predicate, len(l.atom.args), l.negated)

    defining = defaultdict(list)
    for r in rules:
        for l in r.head_literals():
            defining[sig(l)].append(r)
    domain = set(defining)
    changed = True
    while changed:
        changed = False
        for s in list(domain):
            for r in defining[s]:
                if r.choice is not None or len(r.head) != 1 or r.body_neg or r.body_subj \
                        or any(sig(l) not in domain for l in r.body_pos):
                    domain.discard(s)
                    changed = True
                    break
    return domain


def _instances(rule: Rule, index: _Index):
    for binding in _join(rule.body_pos, rule.comparisons, index, {}):
        yield binding


def _ground_choice(choice: ChoiceHead, binding, index) -> ChoiceHead | None:
    """Ground choice head with ``lower <= upper <= len(elements)``.

    ``None`` when fewer elements exist than the lower bound asks for; the rule
    then acts as an integrity constraint.
    """
    elements = []
    for e in choice.elements:
        for b in _join(e.condition, (), index, binding):
            elements.append(ChoiceElement(_ground_literal(e.literal, b)))
    elements = dedupe(sorted(dedupe(elements), key=lambda e: literal_key(e.literal)))
    lower = 0 if choice.lower is None else evaluate(choice.lower, binding)
    upper = len(elements) if choice.upper is None else evaluate(choice.upper, binding)
    if not isinstance(lower, int) or not isinstance(upper, int):
        raise GroundingError("choice bounds must be integers: %s" % choice)
    if upper < lower:
        raise GroundingError("choice upper bound %d below lower bound %d" % (upper, lower))
    if lower > len(elements):
        return None
    return ChoiceHead(lower, min(upper, len(elements)), elements)


def _ground_rule(rule: Rule, binding, index) -> Rule:
    choice = None if rule.choice is None else _ground_choice(rule.choice, binding, index)
    return Rule(
        head=dedupe(_ground_literal(l, binding) for l in rule.head),
        body_pos=dedupe(_ground_literal(l, binding) for l in rule.body_pos),
        body_neg=dedupe(_ground_literal(l, binding) for l in rule.body_neg),
        body_subj=dedupe(SubjectiveLiteral(s.modality, _ground_literal(s.literal, binding), s.inner_negated)
                         for s in rule.body_subj),
        choice=choice,
    )


def prepare(program: Program) -> list[Rule]:
    """Substitute #const values, expand intervals and check safety."""
    consts = {}
    for name, value in program.constants:
        if name in consts and consts[name] != value:
            raise GroundingError("constant %s bound twice" % name)
        consts[name] = value
    rules = []
    for r in program.rules:
        r = _map_rule_terms(r, lambda t: _substitute_constants(t, consts))
        for expanded in _expand_intervals(r):
            check_safety(expanded)
            rules.append(expanded)
    return rules


def ground(program: Program) -> Program:
    """Instantiate ``program`` into an equivalent variable-free program."""
    rules = prepare(program)
    domain = domain_signatures(rules)
    for r in rules:
        if r.choice is not None:
            for e in r.choice.elements:
                for c in e.condition:
                    if (c.atom.predicate, len(c.atom.args), c.negated) not in domain:
                        raise GroundingError("choice condition %s is not over a domain predicate" % c)

    index = _Index()
    changed = True
    while changed:
        changed = False
        for r in rules:
            for binding in _instances(r, index):
                if r.choice is not None:
                    choice = _ground_choice(r.choice, binding, index)
                    heads = [e.literal for e in choice.elements] if choice else []
                else:
                    heads = [_ground_literal(l, binding) for l in r.head]
                for h in heads:
                    if index.add(h):
                        changed = True

    out = []
    for r in rules:
        bindings = list(_instances(r, index))
        bindings.sort(key=lambda b: [(k, term_key(v)) for k, v in sorted(b.items())])
        for b in bindings:
            out.append(_ground_rule(r, b, index))
    return Program(dedupe(out))
