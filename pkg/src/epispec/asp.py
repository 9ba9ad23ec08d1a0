"""Answer sets of ground, subjective-free programs.

Choice rules are compiled into pairs of normal rules over auxiliary atoms plus
a cardinality constraint.  Enumeration is a backtracking search with
propagation over rule bodies, supportedness and cardinality bounds; every
total assignment is verified against the stability condition before it is
reported.
"""

from __future__ import annotations

import itertools
import logging
import os
import shlex
import subprocess
import tempfile
from dataclasses import dataclass
from typing import NamedTuple

from .errors import ExternalSolverError, GroundingError, ParseError, ResourceLimitExceeded
from .syntax import Atom, Literal, Program, Rule, complement, literal_key, sorted_literals

log = logging.getLogger(__name__)

AUX_PREFIX = "aux_not_"
AUX_NEG_PREFIX = "aux_notn_"
DEFAULT_MINIMALITY_CAP = 20


class AspRule(NamedTuple):
    head: tuple
    pos: tuple = ()
    neg: tuple = ()

    def __str__(self):
        return str(Rule(head=self.head, body_pos=self.pos, body_neg=self.neg))


class Cardinality(NamedTuple):
    lower: int
    upper: int
    elements: tuple
    guard_pos: tuple = ()
    guard_neg: tuple = ()


@dataclass(frozen=True)
class GroundAspProgram:
    rules: tuple
    cardinality: tuple = ()
    aux: frozenset = frozenset()

    @classmethod
    def from_program(cls, program: Program) -> "GroundAspProgram":
        rules, cards, aux = [], [], set()
        for r in program.rules:
            if r.body_subj:
                raise ValueError("subjective literal in ASP program: %s" % r)
            if not r.is_ground:
                raise ValueError("non-ground rule in ASP program: %s" % r)
            if r.choice is not None:
                compiled, card = compile_choice(r)
                rules.extend(compiled)
                cards.append(card)
                aux.update(aux_literal(e) for e in card.elements)
            else:
                rules.append(AspRule(r.head, r.body_pos, r.body_neg))
        return cls(tuple(rules), tuple(cards), frozenset(aux))

    def literals(self) -> frozenset:
        out = set()
        for r in self.rules:
            out.update(r.head)
            out.update(r.pos)
            out.update(r.neg)
        for c in self.cardinality:
            out.update(c.elements)
            out.update(c.guard_pos)
            out.update(c.guard_neg)
        return frozenset(out)

    @property
    def is_disjunctive(self):
        return any(len(r.head) > 1 for r in self.rules)


def _as_asp(program) -> GroundAspProgram:
    if isinstance(program, GroundAspProgram):
        return program
    return GroundAspProgram.from_program(program)


def aux_literal(l: Literal) -> Literal:
    prefix = AUX_NEG_PREFIX if l.negated else AUX_PREFIX
    return Literal(Atom(prefix + l.atom.predicate, l.atom.args))


def compile_choice(rule: Rule):
    """Compile a ground choice rule into normal rules and a cardinality constraint."""
    choice = rule.choice
    lower, upper = choice.lower, choice.upper
    if upper < lower:
        raise GroundingError("choice upper bound %s below lower bound %s in %s" % (upper, lower, rule))
    rules = []
    elements = tuple(e.literal for e in choice.elements)
    for a in elements:
        na = aux_literal(a)
        rules.append(AspRule((a,), rule.body_pos, rule.body_neg + (na,)))
        rules.append(AspRule((na,), rule.body_pos, rule.body_neg + (a,)))
    return rules, Cardinality(lower, upper, elements, rule.body_pos, rule.body_neg)


def _guard_holds(c: Cardinality, x) -> bool:
    return all(l in x for l in c.guard_pos) and not any(l in x for l in c.guard_neg)


def gl_reduct(program, x) -> tuple:
    """Gelfond-Lifschitz reduct: positive rules of ``program`` relative to ``x``."""
    program = _as_asp(program)
    x = frozenset(x)
    return tuple(AspRule(r.head, r.pos) for r in program.rules if not any(l in x for l in r.neg))


def least_model(rules) -> frozenset | None:
    """Least model of a positive normal program; ``None`` signals inconsistency."""
    model = set()
    pending = list(rules)
    changed = True
    while changed:
        changed = False
        rest = []
        for r in pending:
            if len(r.head) > 1:
                raise ValueError("least_model needs non-disjunctive rules: %s" % (r,))
            if all(l in model for l in r.pos):
                if not r.head:
                    return None
                h = r.head[0]
                if h not in model:
                    if complement(h) in model:
                        return None
                    model.add(h)
                    changed = True
            else:
                rest.append(r)
        pending = rest
    return frozenset(model)


def _is_model(rules, x) -> bool:
    for r in rules:
        if all(l in x for l in r.pos) and not any(h in x for h in r.head):
            return False
    return True


def is_answer_set(program, x, minimality_cap: int = DEFAULT_MINIMALITY_CAP) -> bool:
    program = _as_asp(program)
    x = frozenset(x)
    if any(complement(l) in x for l in x):
        return False
    for c in program.cardinality:
        if _guard_holds(c, x):
            n = sum(1 for e in c.elements if e in x)
            if not c.lower <= n <= c.upper:
                return False
    reduct = gl_reduct(program, x)
    if all(len(r.head) <= 1 for r in reduct):
        return least_model(reduct) == x
    if not _is_model(reduct, x):
        return False
    if len(x) > minimality_cap:
        raise ResourceLimitExceeded("minimality check over %d true atoms exceeds cap %d"
                                    % (len(x), minimality_cap))
    atoms = sorted_literals(x)
    relevant = [r for r in reduct if all(l in x for l in r.pos)]
    for size in range(len(atoms)):
        for sub in itertools.combinations(atoms, size):
            if _is_model(relevant, frozenset(sub)):
                return False
    return True


class _Search:
    def __init__(self, program: GroundAspProgram, budget, minimality_cap):
        self.program = program
        self.budget = budget
        self.minimality_cap = minimality_cap
        self.nodes = 0
        lits = sorted_literals(program.literals())
        self.lits = lits
        ids = {l: i for i, l in enumerate(lits)}
        n = len(lits)
        self.comp = [ids.get(complement(l), -1) for l in lits]
        self.rules = [(tuple(ids[h] for h in r.head), tuple(ids[p] for p in r.pos),
                       tuple(ids[q] for q in r.neg)) for r in program.rules]
        self.cards = [(c.lower, c.upper, tuple(ids[e] for e in c.elements),
                       tuple(ids[p] for p in c.guard_pos), tuple(ids[q] for q in c.guard_neg))
                      for c in program.cardinality]
        self.occ = [[] for _ in range(n)]
        self.head_occ = [[] for _ in range(n)]
        self.card_occ = [[] for _ in range(n)]
        for ri, (head, pos, neg) in enumerate(self.rules):
            for v in set(head + pos + neg):
                self.occ[v].append(ri)
            for v in head:
                self.head_occ[v].append(ri)
        for ci, (_, _, elems, gp, gn) in enumerate(self.cards):
            for v in set(elems + gp + gn):
                self.card_occ[v].append(ci)
        self.val = [0] * n
        self.trail = []
        self.queue = []

    def assign(self, v, value) -> bool:
        cur = self.val[v]
        if cur:
            return cur == value
        self.val[v] = value
        self.trail.append(v)
        self.queue.append(v)
        return True

    def undo(self, mark):
        val = self.val
        trail = self.trail
        while len(trail) > mark:
            val[trail.pop()] = 0
        self.queue.clear()

    def body_state(self, pos, neg):
        """Return (-1 | 0 | 1, undecided literal or None); literal encoded as (var, wanted)."""
        val = self.val
        undec = 0
        last = None
        for p in pos:
            x = val[p]
            if x == -1:
                return -1, None
            if x == 0:
                undec += 1
                last = (p, 1)
        for q in neg:
            x = val[q]
            if x == 1:
                return -1, None
            if x == 0:
                undec += 1
                last = (q, -1)
        if undec == 0:
            return 1, None
        return 0, (last if undec == 1 else None)

    def check_rule(self, ri) -> bool:
        head, pos, neg = self.rules[ri]
        state, single = self.body_state(pos, neg)
        if state == -1:
            return True
        val = self.val
        undec_head = None
        n_undec = 0
        for h in head:
            x = val[h]
            if x == 1:
                return True
            if x == 0:
                n_undec += 1
                undec_head = h
        if state == 1:
            if n_undec == 0:
                return False
            if n_undec == 1:
                return self.assign(undec_head, 1)
            return True
        if n_undec == 0 and single is not None:
            v, wanted = single
            return self.assign(v, -wanted)
        return True

    def check_support(self, v) -> bool:
        val = self.val
        if val[v] == -1:
            return True
        found = None
        count = 0
        for ri in self.head_occ[v]:
            head, pos, neg = self.rules[ri]
            if self.body_state(pos, neg)[0] == -1:
                continue
            if any(val[h] == 1 for h in head if h != v):
                continue
            count += 1
            found = ri
            if count > 1:
                return True
        if count == 0:
            return self.assign(v, -1)
        if val[v] == 1:
            head, pos, neg = self.rules[found]
            for p in pos:
                if not self.assign(p, 1):
                    return False
            for q in neg:
                if not self.assign(q, -1):
                    return False
            for h in head:
                if h != v and not self.assign(h, -1):
                    return False
        return True

    def check_card(self, ci) -> bool:
        lower, upper, elems, gp, gn = self.cards[ci]
        val = self.val
        t = u = 0
        for e in elems:
            x = val[e]
            if x == 1:
                t += 1
            elif x == 0:
                u += 1
        violated = t > upper or t + u < lower
        state, single = self.body_state(gp, gn)
        if state == -1:
            return True
        if state == 1:
            if violated:
                return False
            if u and t == upper:
                for e in elems:
                    if val[e] == 0 and not self.assign(e, -1):
                        return False
            elif u and t + u == lower:
                for e in elems:
                    if val[e] == 0 and not self.assign(e, 1):
                        return False
            return True
        if violated and single is not None:
            v, wanted = single
            return self.assign(v, -wanted)
        return True

    def propagate(self) -> bool:
        queue = self.queue
        while queue:
            v = queue.pop()
            c = self.comp[v]
            if c >= 0 and self.val[v] == 1 and not self.assign(c, -1):
                return False
            for ri in self.occ[v]:
                if not self.check_rule(ri):
                    return False
                for h in self.rules[ri][0]:
                    if not self.check_support(h):
                        return False
            if not self.check_support(v):
                return False
            for ci in self.card_occ[v]:
                if not self.check_card(ci):
                    return False
        return True

    def initial(self) -> bool:
        for ri in range(len(self.rules)):
            if not self.check_rule(ri):
                return False
        for v in range(len(self.lits)):
            if not self.check_support(v):
                return False
        for ci in range(len(self.cards)):
            if not self.check_card(ci):
                return False
        return self.propagate()

    def run(self):
        if not self.initial():
            return
        yield from self.branch()

    def branch(self):
        val = self.val
        v = next((i for i, x in enumerate(val) if x == 0), None)
        if v is None:
            x = frozenset(self.lits[i] for i, x in enumerate(val) if x == 1)
            if is_answer_set(self.program, x, self.minimality_cap):
                yield x
            return
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise ResourceLimitExceeded("search exceeded node budget %d" % self.budget)
        for value in (-1, 1):
            mark = len(self.trail)
            if self.assign(v, value) and self.propagate():
                yield from self.branch()
            self.undo(mark)


def answer_sets(program, *, budget: int | None = None, show_aux: bool = False,
                minimality_cap: int = DEFAULT_MINIMALITY_CAP) -> list[frozenset]:
    """All answer sets in canonical order; auxiliary choice atoms hidden by default."""
    program = _as_asp(program)
    found = set()
    for x in _Search(program, budget, minimality_cap).run():
        found.add(x if show_aux else x - program.aux)
    return _canonical(found)


def brute_force_answer_sets(program, show_aux: bool = False,
                            minimality_cap: int = DEFAULT_MINIMALITY_CAP) -> list[frozenset]:
    """Answer sets by testing every subset of the head literals.

    Auxiliary choice atoms are not enumerated: in an answer set each one is
    true exactly when its choice body holds and its element is false, so the
    candidate is completed with :func:`complete_aux` before the full check.
    """
    program = _as_asp(program)
    heads = sorted_literals({h for r in program.rules for h in r.head} - program.aux)
    found = set()
    for mask in range(1 << len(heads)):
        x = complete_aux(program, (h for i, h in enumerate(heads) if mask >> i & 1))
        if is_answer_set(program, x, minimality_cap):
            found.add(x if show_aux else x - program.aux)
    return _canonical(found)


def _canonical(sets) -> list[frozenset]:
    return sorted(sets, key=lambda s: tuple(sorted(literal_key(l) for l in s)))


def complete_aux(program: GroundAspProgram, x) -> frozenset:
    """Add the auxiliary choice atoms determined by a set without them."""
    x = frozenset(x)
    extra = set()
    for c in program.cardinality:
        if _guard_holds(c, x):
            extra.update(aux_literal(e) for e in c.elements if e not in x)
    return x | extra


def parse_answer_set_lines(output: str) -> list[frozenset]:
    from .parser import parse_literals

    found = []
    lines = output.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    for n, line in enumerate(lines, 1):
        if line.startswith("%"):
            continue
        try:
            found.append(frozenset(parse_literals(line)))
        except ParseError as e:
            raise ExternalSolverError("unparseable solver output line %d: %s" % (n, e)) from None
    return found


def external_answer_sets(program: Program, command: str, *, timeout: float | None = None,
                         budget: int | None = None) -> list[frozenset]:
    """Answer sets from an external solver, each verified; falls back on rejection.

    ``command`` is a shell-like template; ``{input}`` is replaced by the path of
    a temporary file holding the program, otherwise the path is appended.
    """
    asp = GroundAspProgram.from_program(program)
    fd, path = tempfile.mkstemp(suffix=".es", text=True)
    try:
        with os.fdopen(fd, "w") as f:
            f.write(str(program))
        args = shlex.split(command)
        if any("{input}" in a for a in args):
            args = [a.replace("{input}", path) for a in args]
        else:
            args.append(path)
        try:
            proc = subprocess.run(args, capture_output=True, text=True, timeout=timeout)
        except (OSError, subprocess.SubprocessError) as e:
            raise ExternalSolverError("external solver failed: %s" % e) from e
    finally:
        os.unlink(path)
    found = parse_answer_set_lines(proc.stdout)
    for x in found:
        if not is_answer_set(asp, complete_aux(asp, x)):
            log.warning("external solver returned a non-answer-set %s; using built-in solver",
                        sorted(map(str, x)))
            return answer_sets(asp, budget=budget)
    return _canonical({x - asp.aux for x in found})
