"""Terms, predicates and quantifier-free formulas.

Terms live in a :class:`TermStore` which hash-conses them: two structurally
equal terms always get the same integer id, and the arguments of an
application are always numbered before the application itself.

Three kinds of term exist:

* variables,
* applications ``f(t1, ..., tn)`` of an uninterpreted symbol,
* offsets ``t + c`` with an exact rational ``c``.  Numerals are offsets of
  the reserved zero variable ``x0``.

Predicates are small tuples tagged with their kind, so they hash and compare
at C speed and can be used directly as dictionary keys by the saturation
engines.  Every constructor returns the canonical form.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from operator import itemgetter
from typing import Iterable, Iterator, Sequence

from .errors import CnfBlowup, UnsupportedAtom

ZERO_NAME = "x0"

VAR, APP, SHIFT = 0, 1, 2

_EQ, _EDGE, _NE, _DEQ = 0, 1, 2, 3


def number(c) -> int | Fraction:
    """Exact rational, collapsed to ``int`` when integral."""
    if isinstance(c, bool):
        raise TypeError("booleans are not constants")
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class TermStore:
    """Interner for terms.  One store per engine instance."""

    def __init__(self):
        self._ids: dict[tuple, int] = {}
        self.kind: list[int] = []
        self.head: list = []
        self.args: list[tuple[int, ...]] = []
        self._zero: int | None = None
        self._fresh = 0

    def __len__(self):
        return len(self.kind)

    def _intern(self, key, kind, head, args):
        tid = self._ids.get(key)
        if tid is None:
            tid = len(self.kind)
            self._ids[key] = tid
            self.kind.append(kind)
            self.head.append(head)
            self.args.append(args)
        return tid

    def var(self, name: str) -> int:
        if name == ZERO_NAME:
            return self.zero
        return self._intern((VAR, name), VAR, name, ())

    @property
    def zero(self) -> int:
        if self._zero is None:
            self._zero = self._intern((VAR, ZERO_NAME), VAR, ZERO_NAME, ())
        return self._zero

    def app(self, fn: str, args: Sequence[int]) -> int:
        args = tuple(args)
        if not args:
            return self.var(fn)
        return self._intern((APP, fn, args), APP, fn, args)

    def shift(self, base: int, c) -> int:
        c = number(c)
        if self.kind[base] == SHIFT:
            c = number(self.head[base] + c)
            base = self.args[base][0]
        if c == 0 and base != self._zero:
            return base
        return self._intern((SHIFT, base, c), SHIFT, c, (base,))

    def const(self, c) -> int:
        return self.shift(self.zero, c)

    def fresh_var(self, prefix: str = "w") -> int:
        while True:
            self._fresh += 1
            name = f"{prefix}{self._fresh}"
            if (VAR, name) not in self._ids:
                return self.var(name)

    def lookup_var(self, name: str) -> int | None:
        return self._ids.get((VAR, name))

    def intern(self, ast) -> int:
        """Intern a syntax tree.

        ``ast`` is a variable name, a number, ``('+', ast, c)`` or
        ``(fn, ast, ...)``.
        """
        if isinstance(ast, str):
            return self.var(ast)
        if isinstance(ast, (int, Fraction)):
            return self.const(ast)
        fn, *rest = ast
        if fn == "+":
            base, c = rest
            return self.shift(self.intern(base), c)
        return self.app(fn, [self.intern(a) for a in rest])

    def is_var(self, t: int) -> bool:
        return self.kind[t] == VAR

    def split_offset(self, t: int) -> tuple[int, int | Fraction]:
        if self.kind[t] == SHIFT:
            return self.args[t][0], self.head[t]
        return t, 0

    def subterms(self, t: int, out: set | None = None) -> set[int]:
        out = set() if out is None else out
        stack = [t]
        while stack:
            u = stack.pop()
            if u in out:
                continue
            out.add(u)
            stack.extend(self.args[u])
        return out

    def render(self, t: int) -> str:
        kind = self.kind[t]
        if kind == VAR:
            return self.head[t]
        if kind == APP:
            return "(" + " ".join([self.head[t]] + [self.render(a) for a in self.args[t]]) + ")"
        base, c = self.args[t][0], self.head[t]
        if base == self._zero:
            return format_number(c)
        return f"(+ {self.render(base)} {format_number(c)})"


def format_number(c) -> str:
    c = number(c)
    return str(c)


# --------------------------------------------------------------------------
# predicates


class Predicate(tuple):
    __slots__ = ()
    disjunctive = False

    @property
    def is_dif(self) -> bool:
        return self[0] != _EQ

    def __reduce__(self):
        # rebuild without re-normalising (also keeps worker processes happy)
        return tuple.__new__, (type(self), tuple(self))


class EufEq(Predicate):
    """``lhs = rhs`` (or ``lhs != rhs``) with ``lhs <= rhs`` by term id."""

    __slots__ = ()

    def __new__(cls, lhs: int, rhs: int, positive: bool = True):
        if rhs < lhs:
            lhs, rhs = rhs, lhs
        return tuple.__new__(cls, (_EQ, lhs, rhs, positive))

    lhs = property(itemgetter(1))
    rhs = property(itemgetter(2))
    positive = property(itemgetter(3))

    def __repr__(self):
        return f"EufEq({self[1]}, {self[2]}, {self[3]})"


class DifEdge(Predicate):
    """``src < dst + c`` when strict, else ``src <= dst + c``."""

    __slots__ = ()

    def __new__(cls, src: int, dst: int, strict: bool, c):
        return tuple.__new__(cls, (_EDGE, src, dst, strict, number(c)))

    src = property(itemgetter(1))
    dst = property(itemgetter(2))
    strict = property(itemgetter(3))
    c = property(itemgetter(4))

    def __repr__(self):
        op = "<" if self[3] else "<="
        return f"DifEdge({self[1]} {op} {self[2]} + {self[4]})"


class DifEq(Predicate):
    """``a = b + c``; stands for the edge pair ``a <= b + c, b <= a - c``."""

    __slots__ = ()

    def __new__(cls, a: int, b: int, c):
        c = number(c)
        if b < a:
            a, b, c = b, a, -c
        return tuple.__new__(cls, (_DEQ, a, b, c))

    a = property(itemgetter(1))
    b = property(itemgetter(2))
    c = property(itemgetter(3))

    def __repr__(self):
        return f"DifEq({self[1]} = {self[2]} + {self[3]})"


class DifNe(Predicate):
    """``a != b + c``.  Its negation is disjunctive over the edges."""

    __slots__ = ()
    disjunctive = True

    def __new__(cls, a: int, b: int, c):
        c = number(c)
        if b < a:
            a, b, c = b, a, -c
        return tuple.__new__(cls, (_NE, a, b, c))

    a = property(itemgetter(1))
    b = property(itemgetter(2))
    c = property(itemgetter(3))

    def __repr__(self):
        return f"DifNe({self[1]} != {self[2]} + {self[3]})"


def negate(p: Predicate) -> Predicate:
    tag = p[0]
    if tag == _EQ:
        return EufEq(p[1], p[2], not p[3])
    if tag == _EDGE:
        # not (x <= y + c)  <=>  y < x - c ;  not (x < y + c)  <=>  y <= x - c
        return DifEdge(p[2], p[1], not p[3], -p[4])
    if tag == _DEQ:
        return DifNe(p[1], p[2], p[3])
    return DifEq(p[1], p[2], p[3])


def facts(p: Predicate) -> tuple[Predicate, ...]:
    """The atomic theory facts a predicate contributes to a fact set."""
    if p[0] == _DEQ:
        a, b, c = p[1], p[2], p[3]
        return DifEdge(a, b, False, c), DifEdge(b, a, False, -c)
    return (p,)


def endpoints(p: Predicate) -> tuple[int, int]:
    return p[1], p[2]


OPS = ("=", "!=", "<", "<=", ">", ">=")


def canonicalize(store: TermStore, op: str, lhs: int, rhs: int) -> Predicate:
    """Turn ``lhs op rhs`` into a canonical predicate."""
    if op not in OPS:
        raise UnsupportedAtom(f"unsupported relation {op!r}")
    if op in (">", ">="):
        op = "<" if op == ">" else "<="
        lhs, rhs = rhs, lhs
    arith = store.kind[lhs] == SHIFT or store.kind[rhs] == SHIFT
    if op in ("=", "!=") and not arith:
        return EufEq(lhs, rhs, op == "=")
    a, c1 = store.split_offset(lhs)
    b, c2 = store.split_offset(rhs)
    c = number(c2 - c1)
    if op == "<":
        return DifEdge(a, b, True, c)
    if op == "<=":
        return DifEdge(a, b, False, c)
    if op == "=":
        return DifEq(a, b, c)
    return DifNe(a, b, c)


def terms_of(store: TermStore, preds: Iterable[Predicate]) -> set[int]:
    out: set[int] = set()
    for p in preds:
        store.subterms(p[1], out)
        store.subterms(p[2], out)
    return out


def variables_of(store: TermStore, preds: Iterable[Predicate]) -> set[int]:
    return {t for t in terms_of(store, preds) if store.kind[t] == VAR}


def render_predicate(store: TermStore, p: Predicate) -> str:
    """Print a predicate in the input syntax."""
    tag = p[0]
    r = store.render
    if tag == _EQ:
        op = "=" if p[3] else "!="
        return f"({op} {r(p[1])} {r(p[2])})"
    if tag == _EDGE:
        op = "<" if p[3] else "<="
        a, b, c = p[1], p[2], p[4]
        z = store._zero
        if a == z and b != z:
            # x0 <= b + c  <=>  -c <= b
            return f"({op} {format_number(-c)} {r(b)})"
        return f"({op} {r(a)} {_offset(store, b, c)})"
    op = "=" if tag == _DEQ else "!="
    return f"({op} {r(p[1])} {_offset(store, p[2], p[3])})"


def _offset(store, t, c):
    if t == store._zero:
        return format_number(c)
    if c == 0:
        return store.render(t)
    return f"(+ {store.render(t)} {format_number(c)})"


# --------------------------------------------------------------------------
# formulas


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class TrueF(Formula):
    pass


@dataclass(frozen=True)
class FalseF(Formula):
    pass


@dataclass(frozen=True)
class Atom(Formula):
    pred: Predicate


@dataclass(frozen=True)
class And(Formula):
    children: tuple


@dataclass(frozen=True)
class Or(Formula):
    children: tuple


@dataclass(frozen=True)
class Not(Formula):
    child: Formula


TRUE = TrueF()
FALSE = FalseF()


def atoms(f: Formula) -> list[Predicate]:
    """Atoms of ``f`` in first-occurrence order."""
    seen: dict[Predicate, None] = {}

    def walk(g):
        if isinstance(g, Atom):
            seen.setdefault(g.pred, None)
        elif isinstance(g, (And, Or)):
            for c in g.children:
                walk(c)
        elif isinstance(g, Not):
            walk(g.child)

    walk(f)
    return list(seen)


def evaluate(f: Formula, value) -> bool:
    """Evaluate with atoms as free Booleans; ``value(pred) -> bool``."""
    if isinstance(f, Atom):
        return value(f.pred)
    if isinstance(f, And):
        return all(evaluate(c, value) for c in f.children)
    if isinstance(f, Or):
        return any(evaluate(c, value) for c in f.children)
    if isinstance(f, Not):
        return not evaluate(f.child, value)
    return isinstance(f, TrueF)


def nnf(f: Formula, positive: bool = True) -> Formula:
    if isinstance(f, Not):
        return nnf(f.child, not positive)
    if isinstance(f, Atom):
        return f if positive else Not(f)
    if isinstance(f, TrueF):
        return TRUE if positive else FALSE
    if isinstance(f, FalseF):
        return FALSE if positive else TRUE
    children = tuple(nnf(c, positive) for c in f.children)
    if isinstance(f, And) == positive:
        return And(children)
    return Or(children)


# A literal is (atom, polarity); a clause is a frozenset of literals.
Literal = tuple
Clause = frozenset

DEFAULT_CLAUSE_CAP = 4096


def literal_predicate(lit: Literal) -> Predicate:
    atom, positive = lit
    return atom if positive else negate(atom)


def _minimize(clauses: Iterable[Clause]) -> list[Clause]:
    """Drop tautologies and subsumed clauses; deterministic order."""
    kept = []
    for cl in sorted(set(clauses), key=lambda c: (len(c), sorted(c))):
        if any((a, not s) in cl for a, s in cl):
            continue
        if any(k <= cl for k in kept):
            continue
        kept.append(cl)
    return kept


def to_cnf(f: Formula, cap: int = DEFAULT_CLAUSE_CAP) -> list[Clause]:
    """Equivalent CNF by distribution; no auxiliary variables.

    ``[]`` is ``true``; a list holding the empty clause is ``false``.
    """

    def go(g) -> list[Clause]:
        if isinstance(g, TrueF):
            return []
        if isinstance(g, FalseF):
            return [frozenset()]
        if isinstance(g, Atom):
            return [frozenset({(g.pred, True)})]
        if isinstance(g, Not):
            return [frozenset({(g.child.pred, False)})]
        parts = [go(c) for c in g.children]
        if isinstance(g, And):
            out = _minimize(cl for p in parts for cl in p)
        else:
            if any(not p for p in parts):
                return []
            size = 1
            for p in parts:
                size *= len(p)
                if size > cap * 64:
                    raise CnfBlowup(f"CNF exceeds {cap} clauses")
            out = _minimize(frozenset().union(*combo) for combo in product(*parts))
        if len(out) > cap:
            raise CnfBlowup(f"CNF exceeds {cap} clauses")
        return out

    return go(nnf(f))


def iter_assignments(n: int) -> Iterator[tuple[bool, ...]]:
    return product((False, True), repeat=n)
