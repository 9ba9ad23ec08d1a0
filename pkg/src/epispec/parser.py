"""Recursive-descent parser for the ``.es`` surface syntax.

See ``docs/language.md`` for the grammar.
"""

from __future__ import annotations

import re
from typing import NamedTuple

from .errors import ParseError
from .syntax import (
    Atom, BinOp, ChoiceElement, ChoiceHead, Comparison, Function, Interval,
    Literal, Modality, Program, Rule, SubjectiveLiteral, Variable, dedupe,
)

RESERVED_PREFIX = "aux_"
KEYWORDS = {"not", "or"}
COMPARISON_OPS = {"<", "<=", ">", ">=", "=", "!="}

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+|%[^\n]*)
  | (?P<directive>\#[a-z]+)
  | (?P<int>\d+)
  | (?P<ident>[a-z][A-Za-z0-9_]*)
  | (?P<var>[A-Z][A-Za-z0-9_]*)
  | (?P<punct>:-|\.\.|!=|<=|>=|[<>=(){},.:+|-]|¬)
""", re.VERBOSE)


class Token(NamedTuple):
    kind: str
    value: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError("unexpected character", line, pos - line_start + 1, text[pos])
        kind = m.lastgroup
        value = m.group()
        if kind != "ws":
            if value == "¬":
                value = "-"
            if kind == "punct":
                kind = value
            tokens.append(Token(kind, value, line, pos - line_start + 1))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, allow_reserved: bool):
        self.tokens = tokenize(text)
        self.i = 0
        self.allow_reserved = allow_reserved

    # token helpers

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k=1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def error(self, message, tok=None):
        tok = tok or self.tok
        shown = tok.value if tok.kind != "eof" else "<end of input>"
        return ParseError(message, tok.line, tok.column, shown)

    def expect(self, kind, what=None):
        if self.tok.kind != kind:
            raise self.error("expected %s" % (what or repr(kind)))
        return self.advance()

    def at_keyword(self, word):
        return self.tok.kind == "ident" and self.tok.value == word

    # program level

    def program(self) -> Program:
        rules, constants = [], []
        while self.tok.kind != "eof":
            if self.tok.kind == "directive":
                constants.append(self.directive())
            else:
                rules.append(self.rule())
        return Program(tuple(rules), tuple(constants))

    def directive(self):
        tok = self.advance()
        if tok.value != "#const":
            raise self.error("unknown directive", tok)
        name = self.expect("ident", "constant name").value
        self.expect("=")
        value = self.expect("int", "integer").value
        self.expect(".")
        return name, int(value)

    def rule(self) -> Rule:
        head, choice = (), None
        if self.tok.kind != ":-":
            if self.starts_choice():
                choice = self.choice_head()
            else:
                head = self.disjunction()
        pos, neg, subj, cmps = [], [], [], []
        if self.tok.kind == ":-":
            self.advance()
            if self.tok.kind != ".":
                self.body(pos, neg, subj, cmps)
        elif not head and choice is None:
            raise self.error("expected rule head")
        self.expect(".", "'.' at end of rule")
        return Rule(head=dedupe(head), body_pos=dedupe(pos), body_neg=dedupe(neg),
                    body_subj=dedupe(subj), choice=choice, comparisons=dedupe(cmps))

    def starts_choice(self):
        if self.tok.kind == "{":
            return True
        return self.tok.kind in ("int", "ident") and self.peek().kind == "{"

    def choice_head(self) -> ChoiceHead:
        lower = upper = None
        if self.tok.kind != "{":
            lower = self.bound()
        self.expect("{")
        elements = []
        if self.tok.kind != "}":
            while True:
                l = self.literal()
                cond = []
                while self.tok.kind == ":":
                    self.advance()
                    cond.append(self.literal())
                elements.append(ChoiceElement(l, tuple(cond)))
                if self.tok.kind != ",":
                    break
                self.advance()
        self.expect("}")
        if self.tok.kind in ("int", "ident") and not self.at_keyword("not"):
            upper = self.bound()
        return ChoiceHead(lower, upper, dedupe(elements))

    def bound(self):
        t = self.advance()
        return int(t.value) if t.kind == "int" else t.value

    def disjunction(self):
        out = [self.literal()]
        while self.at_keyword("or") or self.tok.kind == "|":
            self.advance()
            out.append(self.literal())
        return out

    def body(self, pos, neg, subj, cmps):
        while True:
            self.body_element(pos, neg, subj, cmps)
            if self.tok.kind != ",":
                return
            self.advance()

    def is_modality(self, k=0):
        t = self.peek(k)
        if t.kind != "var" or t.value not in ("K", "M"):
            return False
        nxt = self.peek(k + 1)
        if nxt.kind == "ident":
            return True
        return nxt.kind == "-" and self.peek(k + 2).kind == "ident"

    def body_element(self, pos, neg, subj, cmps):
        if self.at_keyword("not"):
            self.advance()
            neg.append(self.literal())
            return
        negated_modality = self.tok.kind == "-" and self.is_modality(1)
        if negated_modality or self.is_modality():
            if negated_modality:
                self.advance()
            name = self.advance().value
            inner = False
            if self.at_keyword("not"):
                self.advance()
                inner = True
            table = {("K", False): Modality.K, ("K", True): Modality.NOT_K,
                     ("M", False): Modality.M, ("M", True): Modality.NOT_M}
            subj.append(SubjectiveLiteral(table[name, negated_modality], self.literal(), inner))
            return
        if self.tok.kind == "ident" or (self.tok.kind == "-" and self.peek().kind == "ident"):
            start = self.tok
            l = self.literal()
            if self.tok.kind in COMPARISON_OPS or self.tok.kind in ("+", "-"):
                if l.negated:
                    raise self.error("classical negation in comparison", start)
                left = self.fold_tail(self.atom_to_term(l.atom))
                cmps.append(self.comparison_rest(left))
            else:
                pos.append(l)
            return
        left = self.term()
        cmps.append(self.comparison_rest(left))

    def comparison_rest(self, left):
        if self.tok.kind not in COMPARISON_OPS:
            raise self.error("expected comparison operator")
        op = self.advance().value
        return Comparison(op, left, self.term())

    @staticmethod
    def atom_to_term(a: Atom):
        return Function(a.predicate, a.args) if a.args else a.predicate

    def literal(self) -> Literal:
        negated = False
        if self.tok.kind == "-":
            self.advance()
            negated = True
        return Literal(self.atom(), negated)

    def check_name(self, tok):
        if tok.value in KEYWORDS:
            raise self.error("keyword used as name", tok)
        if not self.allow_reserved and tok.value.startswith(RESERVED_PREFIX):
            raise self.error("names starting with %r are reserved" % RESERVED_PREFIX, tok)

    def atom(self) -> Atom:
        tok = self.expect("ident", "literal")
        self.check_name(tok)
        args = ()
        if self.tok.kind == "(":
            args = self.arguments()
        return Atom(tok.value, args)

    def arguments(self):
        self.expect("(")
        args = [self.term()]
        while self.tok.kind == ",":
            self.advance()
            args.append(self.term())
        self.expect(")")
        return tuple(args)

    # terms

    def term(self):
        t = self.additive()
        if self.tok.kind == "..":
            self.advance()
            t = Interval(t, self.additive())
        return t

    def additive(self):
        return self.fold_tail(self.primary())

    def fold_tail(self, t):
        while self.tok.kind in ("+", "-"):
            op = self.advance().value
            t = BinOp(op, t, self.primary())
        return t

    def primary(self):
        tok = self.tok
        if tok.kind == "int":
            self.advance()
            return int(tok.value)
        if tok.kind == "-" and self.peek().kind == "int":
            self.advance()
            return -int(self.advance().value)
        if tok.kind == "var":
            self.advance()
            return Variable(tok.value)
        if tok.kind == "ident":
            self.check_name(tok)
            self.advance()
            if self.tok.kind == "(":
                return Function(tok.value, self.arguments())
            return tok.value
        if tok.kind == "(":
            self.advance()
            t = self.term()
            self.expect(")")
            return t
        raise self.error("expected term")


def parse(text: str, allow_reserved: bool = False) -> Program:
    """Parse program text; raises :class:`ParseError` on the first error."""
    return _Parser(text, allow_reserved).program()


def parse_literals(text: str, allow_reserved: bool = True) -> list[Literal]:
    """Parse a whitespace separated sequence of ground literals."""
    p = _Parser(text, allow_reserved)
    out = []
    while p.tok.kind != "eof":
        l = p.literal()
        if not l.is_ground:
            raise p.error("non-ground literal")
        out.append(l)
    return out
