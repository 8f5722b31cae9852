"""S-expression reader for problem files.

::

    (predicates (= a b) (<= x (+ y 1)) ...)
    (goal (or (= a c) (not (< x 5))))

Comments run from ``;`` to the end of the line.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError, UnsupportedAtom
from .logic import (
    FALSE, OPS, TRUE, ZERO_NAME, And, Atom, Formula, Not, Or, Predicate,
    TermStore, canonicalize, number, render_predicate,
)

_TOKEN = re.compile(r"\s+|;[^\n]*|\(|\)|[^\s();]+")
_NUMBER = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)(/\d+)?$")


@dataclass
class Sym:
    text: str
    line: int
    col: int


@dataclass
class SList:
    items: list
    line: int
    col: int
    start: int = 0
    end: int = 0


@dataclass
class Problem:
    store: TermStore
    predicates: list[Predicate]
    goal: Formula | None
    sources: list[str] = field(default_factory=list)

    @property
    def theory(self) -> str:
        from .combine import theory_of
        from .logic import atoms
        preds = list(self.predicates)
        if self.goal is not None:
            preds += atoms(self.goal)
        return theory_of(self.store, preds)

    def label(self, i: int) -> str:
        if i < len(self.sources):
            return self.sources[i]
        return render_predicate(self.store, self.predicates[i])


def read_sexprs(text: str) -> list:
    stack: list[SList] = [SList([], 1, 1)]
    line, line_start = 1, 0
    for m in _TOKEN.finditer(text):
        tok = m.group()
        col = m.start() - line_start + 1
        if tok[0].isspace() or tok[0] == ";":
            nl = tok.count("\n")
            if nl:
                line += nl
                line_start = m.start() + tok.rindex("\n") + 1
            continue
        if tok == "(":
            stack.append(SList([], line, col, m.start()))
        elif tok == ")":
            if len(stack) == 1:
                raise ParseError("unbalanced ')'", line, col)
            node = stack.pop()
            node.end = m.end()
            stack[-1].items.append(node)
        else:
            stack[-1].items.append(Sym(tok, line, col))
    if len(stack) > 1:
        node = stack[-1]
        raise ParseError("unclosed '('", node.line, node.col)
    return stack[0].items


def parse_number(text: str):
    if not _NUMBER.match(text):
        return None
    try:
        return number(Fraction(text))
    except (ValueError, ZeroDivisionError):
        return None


class _Reader:
    def __init__(self, text: str, store: TermStore):
        self.text = text
        self.store = store

    def error(self, msg, node):
        raise ParseError(msg, node.line, node.col)

    def term(self, node) -> int:
        store = self.store
        if isinstance(node, Sym):
            value = parse_number(node.text)
            if value is not None:
                return store.const(value)
            if node.text == ZERO_NAME:
                self.error(f"'{ZERO_NAME}' is reserved", node)
            if node.text in OPS or node.text in ("and", "or", "not", "+"):
                self.error(f"unexpected {node.text!r} in term position", node)
            return store.var(node.text)
        if not node.items or not isinstance(node.items[0], Sym):
            self.error("malformed term", node)
        head = node.items[0].text
        if head == "+":
            if len(node.items) != 3:
                self.error("'+' takes a term and a rational", node)
            c = node.items[2]
            value = parse_number(c.text) if isinstance(c, Sym) else None
            if value is None:
                self.error("second argument of '+' must be a rational", c)
            return store.shift(self.term(node.items[1]), value)
        if len(node.items) < 2:
            self.error("function application needs arguments", node)
        if parse_number(head) is not None or head in OPS or head == ZERO_NAME:
            self.error(f"bad function symbol {head!r}", node.items[0])
        return store.app(head, [self.term(a) for a in node.items[1:]])

    def atom(self, node) -> Predicate:
        if not isinstance(node, SList) or len(node.items) != 3 or not isinstance(node.items[0], Sym):
            self.error("expected an atom (op term term)", node)
        op = node.items[0].text
        if op not in OPS:
            self.error(f"unknown relation {op!r}", node.items[0])
        lhs = self.term(node.items[1])
        rhs = self.term(node.items[2])
        try:
            return canonicalize(self.store, op, lhs, rhs)
        except UnsupportedAtom as exc:
            raise ParseError(str(exc), node.line, node.col) from None

    def formula(self, node) -> Formula:
        if isinstance(node, Sym):
            if node.text == "true":
                return TRUE
            if node.text == "false":
                return FALSE
            self.error(f"expected a formula, got {node.text!r}", node)
        if not node.items or not isinstance(node.items[0], Sym):
            self.error("malformed formula", node)
        head = node.items[0].text
        rest = node.items[1:]
        if head in ("and", "or"):
            if not rest:
                self.error(f"'{head}' needs at least one argument", node)
            kids = tuple(self.formula(c) for c in rest)
            return And(kids) if head == "and" else Or(kids)
        if head == "not":
            if len(rest) != 1:
                self.error("'not' takes one argument", node)
            return Not(self.formula(rest[0]))
        return Atom(self.atom(node))

    def source(self, node) -> str:
        raw = re.sub(r";[^\n]*", "", self.text[node.start:node.end])
        return " ".join(raw.split()).replace("( ", "(").replace(" )", ")")


def parse_problem(text: str, store: TermStore | None = None, *,
                  require_goal: bool = True, require_predicates: bool = True) -> Problem:
    store = TermStore() if store is None else store
    reader = _Reader(text, store)
    forms = read_sexprs(text)
    preds: list[Predicate] = []
    sources: list[str] = []
    goal = None
    seen_preds = False
    for form in forms:
        if not isinstance(form, SList) or not form.items or not isinstance(form.items[0], Sym):
            raise ParseError("expected (predicates ...) or (goal ...)", form.line, form.col)
        head = form.items[0].text
        if head == "predicates":
            if seen_preds or goal is not None:
                reader.error("predicates block must come first and only once", form)
            seen_preds = True
            for a in form.items[1:]:
                p = reader.atom(a)
                if p not in preds:
                    preds.append(p)
                    sources.append(reader.source(a))
        elif head == "goal":
            if require_predicates and not seen_preds:
                reader.error("goal block before predicates block", form)
            if goal is not None:
                reader.error("duplicate goal block", form)
            if len(form.items) != 2:
                reader.error("goal block takes exactly one formula", form)
            goal = reader.formula(form.items[1])
        else:
            reader.error(f"unknown block {head!r}", form)
    if require_predicates and not seen_preds:
        raise ParseError("missing (predicates ...) block", 1, 1)
    if require_goal and goal is None:
        raise ParseError("missing (goal ...) block", 1, 1)
    return Problem(store, preds, goal, sources)


def parse_goal(text: str, store: TermStore) -> Formula:
    return parse_problem(text, store, require_predicates=False).goal
