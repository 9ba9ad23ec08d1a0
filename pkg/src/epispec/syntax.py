"""Abstract syntax for epistemic specifications.

Ground and non-ground programs share the same classes; a term is ground when
it contains no :class:`Variable`, :class:`BinOp` or :class:`Interval`.
Ground terms are plain ``int`` (numbers), ``str`` (symbolic constants) or
:class:`Function` instances with ground arguments.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Union


@dataclass(frozen=True)
class Variable:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Function:
    name: str
    args: tuple = ()

    def __str__(self):
        if not self.args:
            return self.name
        return "%s(%s)" % (self.name, ",".join(str(a) for a in self.args))


@dataclass(frozen=True)
class BinOp:
    op: str  # "+" or "-"
    left: "Term"
    right: "Term"

    def __str__(self):
        right = self.right
        if isinstance(right, BinOp):
            return "%s%s(%s)" % (self.left, self.op, right)
        return "%s%s%s" % (self.left, self.op, right)


@dataclass(frozen=True)
class Interval:
    low: "Term"
    high: "Term"

    def __str__(self):
        return "%s..%s" % (self.low, self.high)


Term = Union[int, str, Variable, Function, BinOp, Interval]


def term_key(t):
    """Sort key: integers < constants < function terms."""
    if isinstance(t, bool):
        raise TypeError("boolean is not a term")
    if isinstance(t, int):
        return (0, t)
    if isinstance(t, str):
        return (1, t)
    if isinstance(t, Function):
        return (2, t.name, len(t.args), tuple(term_key(a) for a in t.args))
    if isinstance(t, Variable):
        return (3, t.name)
    return (4, str(t))


def term_variables(t) -> set:
    if isinstance(t, Variable):
        return {t.name}
    if isinstance(t, Function):
        out = set()
        for a in t.args:
            out |= term_variables(a)
        return out
    if isinstance(t, BinOp):
        return term_variables(t.left) | term_variables(t.right)
    if isinstance(t, Interval):
        return term_variables(t.low) | term_variables(t.high)
    return set()


def is_ground_term(t) -> bool:
    if isinstance(t, (int, str)):
        return True
    if isinstance(t, Function):
        return all(is_ground_term(a) for a in t.args)
    return False


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple = ()

    def __post_init__(self):
        p = self.predicate
        if not p or not p[0].islower():
            raise ValueError("predicate must start with a lowercase letter: %r" % p)

    @property
    def is_ground(self):
        return all(is_ground_term(a) for a in self.args)

    def variables(self) -> set:
        out = set()
        for a in self.args:
            out |= term_variables(a)
        return out

    def __str__(self):
        if not self.args:
            return self.predicate
        return "%s(%s)" % (self.predicate, ",".join(str(a) for a in self.args))


@dataclass(frozen=True)
class Literal:
    """An objective literal: an atom or its classical negation."""

    atom: Atom
    negated: bool = False

    @property
    def predicate(self):
        return self.atom.predicate

    @property
    def is_ground(self):
        return self.atom.is_ground

    def variables(self) -> set:
        return self.atom.variables()

    def __str__(self):
        return ("-" if self.negated else "") + str(self.atom)


ObjectiveLiteral = Literal


def lit(predicate: str, *args, negated: bool = False) -> Literal:
    return Literal(Atom(predicate, tuple(args)), negated)


def complement(l: Literal) -> Literal:
    return Literal(l.atom, not l.negated)


def literal_key(l: Literal):
    return (l.atom.predicate, tuple(term_key(a) for a in l.atom.args), l.negated)


class Modality(enum.Enum):
    K = "K"
    NOT_K = "-K"
    M = "M"
    NOT_M = "-M"


@dataclass(frozen=True)
class SubjectiveLiteral:
    modality: Modality
    literal: Literal
    inner_negated: bool = False  # the "not" of "K not l"

    @property
    def is_core(self):
        return self.modality in (Modality.K, Modality.NOT_K) and not self.inner_negated

    def variables(self) -> set:
        return self.literal.variables()

    def __str__(self):
        inner = "not " if self.inner_negated else ""
        return "%s %s%s" % (self.modality.value, inner, self.literal)


def K(l: Literal) -> SubjectiveLiteral:
    return SubjectiveLiteral(Modality.K, l)


def NotK(l: Literal) -> SubjectiveLiteral:
    return SubjectiveLiteral(Modality.NOT_K, l)


@dataclass(frozen=True)
class Comparison:
    op: str  # one of < <= > >= = !=
    left: Term
    right: Term

    def variables(self) -> set:
        return term_variables(self.left) | term_variables(self.right)

    def __str__(self):
        return "%s%s%s" % (self.left, self.op, self.right)


@dataclass(frozen=True)
class ChoiceElement:
    literal: Literal
    condition: tuple = ()  # tuple of Literal, empty once grounded

    def __str__(self):
        return ":".join([str(self.literal)] + [str(c) for c in self.condition])


@dataclass(frozen=True)
class ChoiceHead:
    lower: Term | None
    upper: Term | None
    elements: tuple  # tuple of ChoiceElement

    def __str__(self):
        lo = "" if self.lower is None else str(self.lower)
        hi = "" if self.upper is None else str(self.upper)
        return "%s{%s}%s" % (lo, ", ".join(str(e) for e in self.elements), hi)


@dataclass(frozen=True)
class Rule:
    head: tuple = ()  # disjunction of Literal; empty for constraints and choice rules
    body_pos: tuple = ()
    body_neg: tuple = ()
    body_subj: tuple = ()
    choice: ChoiceHead | None = None
    comparisons: tuple = ()

    @property
    def is_constraint(self):
        return not self.head and self.choice is None

    @property
    def is_fact(self):
        return not (self.body_pos or self.body_neg or self.body_subj or self.comparisons)

    @property
    def body_k(self):
        """Objective literals under K (core form)."""
        return tuple(s.literal for s in self.body_subj if s.modality is Modality.K)

    @property
    def body_not_k(self):
        return tuple(s.literal for s in self.body_subj if s.modality is Modality.NOT_K)

    def head_literals(self):
        if self.choice is not None:
            return tuple(e.literal for e in self.choice.elements)
        return self.head

    def literals(self):
        out = list(self.head_literals())
        if self.choice is not None:
            for e in self.choice.elements:
                out.extend(e.condition)
        out.extend(self.body_pos)
        out.extend(self.body_neg)
        out.extend(s.literal for s in self.body_subj)
        return out

    @property
    def is_ground(self):
        if self.comparisons:
            return False
        if self.choice is not None:
            if any(e.condition for e in self.choice.elements):
                return False
            for b in (self.choice.lower, self.choice.upper):
                if b is not None and not isinstance(b, int):
                    return False
        return all(l.is_ground for l in self.literals())

    def __str__(self):
        if self.choice is not None:
            head = str(self.choice)
        else:
            head = " or ".join(str(l) for l in self.head)
        body = [str(l) for l in self.body_pos]
        body += [str(s) for s in self.body_subj]
        body += ["not %s" % l for l in self.body_neg]
        body += [str(c) for c in self.comparisons]
        if not body:
            return head + "." if head else ":- ."
        if not head:
            return ":- %s." % ", ".join(body)
        return "%s :- %s." % (head, ", ".join(body))


@dataclass(frozen=True)
class Program:
    rules: tuple = ()
    constants: tuple = ()  # tuple of (name, int) from #const directives

    @property
    def is_ground(self):
        return all(r.is_ground for r in self.rules)

    def __add__(self, other: "Program") -> "Program":
        return Program(self.rules + other.rules, self.constants + other.constants)

    def __str__(self):
        lines = ["#const %s=%s." % (n, v) for n, v in self.constants]
        lines += [str(r) for r in self.rules]
        return "\n".join(lines) + ("\n" if lines else "")


def program_literals(program: Program) -> frozenset:
    """All objective literals occurring in the program (Lit)."""
    out = set()
    for r in program.rules:
        out.update(r.literals())
    return frozenset(out)


def dedupe(items: Iterable) -> tuple:
    return tuple(dict.fromkeys(items))


# canonical ordering

def belief_set_key(b) -> tuple:
    return tuple(sorted(literal_key(l) for l in b))


def world_view_key(w) -> tuple:
    return tuple(sorted(belief_set_key(b) for b in w))


def sorted_literals(lits) -> list:
    return sorted(lits, key=literal_key)


def sorted_belief_sets(w) -> list:
    return sorted(w, key=belief_set_key)


def sorted_world_views(ws) -> list:
    return sorted(ws, key=world_view_key)


def canonical_order(x, y) -> int:
    """Three-way comparison of literals, belief sets or world views."""
    if isinstance(x, Literal):
        kx, ky = literal_key(x), literal_key(y)
    else:
        sample = next(iter(x), None) if x else next(iter(y), None)
        if sample is None or isinstance(sample, Literal):
            kx, ky = belief_set_key(x), belief_set_key(y)
        else:
            kx, ky = world_view_key(x), world_view_key(y)
    return (kx > ky) - (kx < ky)


def format_belief_set(b) -> str:
    items = [str(l) for l in sorted_literals(b)]
    return "{ %s }" % ", ".join(items) if items else "{ }"


def format_world_view(w) -> str:
    return "{%s}" % ", ".join(format_belief_set(b) for b in sorted_belief_sets(w))
