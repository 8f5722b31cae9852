from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdpabs.errors import CnfBlowup, UnsupportedAtom
from sdpabs.logic import (
    FALSE, TRUE, And, Atom, DifEdge, DifEq, DifNe, EufEq, Not, Or, TermStore, canonicalize, evaluate,
    facts, iter_assignments, negate, render_predicate, to_cnf,
)

from conftest import pred


def test_hash_consing(store):
    x = store.var("x")
    assert store.app("f", [x]) == store.app("f", [x])
    assert store.var("x") == x
    assert store.shift(store.shift(x, 1), 2) == store.shift(x, 3)
    assert store.shift(x, 0) == x
    assert store.const(0) != store.zero


def test_canonical_forms(store):
    x, y = store.var("x"), store.var("y")
    assert canonicalize(store, "=", y, x) == EufEq(x, y)
    assert canonicalize(store, ">", x, y) == DifEdge(y, x, True, 0)
    p = canonicalize(store, "<=", store.shift(x, 2), store.shift(y, 5))
    assert p == DifEdge(x, y, False, 3)
    assert canonicalize(store, "=", store.shift(x, 1), y) == DifEq(y, x, 1)
    assert canonicalize(store, "!=", x, store.const(5)) == DifNe(x, store.zero, 5)
    with pytest.raises(UnsupportedAtom):
        canonicalize(store, "~", x, y)


def test_negation(store):
    x, y = store.var("x"), store.var("y")
    # not (x <= y + 1)  <=>  y < x - 1
    assert negate(DifEdge(x, y, False, 1)) == DifEdge(y, x, True, -1)
    assert negate(DifEq(x, y, 2)) == DifNe(x, y, 2)
    assert negate(EufEq(x, y)) == EufEq(x, y, False)
    assert facts(DifEq(x, y, 2)) == (DifEdge(x, y, False, 2), DifEdge(y, x, False, -2))


@given(st.sampled_from(["=", "!=", "<", "<=", ">", ">="]), st.integers(-3, 3), st.integers(-3, 3))
def test_negate_is_involution(op, c1, c2):
    s = TermStore()
    p = canonicalize(s, op, s.shift(s.var("x"), c1), s.shift(s.var("y"), c2))
    assert negate(negate(p)) == p


def test_rationals(store):
    p = pred("(< x (+ y 1/2))", store)
    assert p.c == Fraction(1, 2)
    assert render_predicate(store, p) == "(< x (+ y 1/2))"
    assert render_predicate(store, pred("(<= 3 x)", store)) == "(<= 3 x)"
    assert render_predicate(store, pred("(<= x 2.5)", store)) == "(<= x 5/2)"


def test_render_roundtrip(store):
    for text in ["(= a b)", "(!= (f a) b)", "(<= x (+ y 3))", "(< x y)", "(= x (+ y -2))"]:
        p = pred(text, store)
        assert pred(render_predicate(store, p), store) == p


def test_cnf_basic(store):
    p, q, r = (Atom(pred(t, store)) for t in ["(= a b)", "(= b c)", "(= c d)"])
    assert to_cnf(TRUE) == []
    assert to_cnf(FALSE) == [frozenset()]
    assert len(to_cnf(Or((And((p, q)), r)))) == 2
    assert to_cnf(Or((p, Not(p)))) == []


def test_cnf_blowup(store):
    atoms = [Atom(pred(f"(= a{i} b{i})", store)) for i in range(20)]
    big = Or(tuple(And((atoms[2 * i], atoms[2 * i + 1])) for i in range(10)))
    with pytest.raises(CnfBlowup):
        to_cnf(big, cap=64)


def formulas(atoms):
    leaf = st.sampled_from(atoms).map(Atom) | st.sampled_from([TRUE, FALSE])
    return st.recursive(
        leaf,
        lambda kids: st.lists(kids, min_size=1, max_size=3).map(lambda c: And(tuple(c)))
        | st.lists(kids, min_size=1, max_size=3).map(lambda c: Or(tuple(c)))
        | kids.map(Not),
        max_leaves=8,
    )


_S = TermStore()
_ATOMS = [EufEq(_S.var(a), _S.var(b)) for a, b in ["ab", "bc", "cd"]]


@settings(max_examples=200, deadline=None)
@given(formulas(_ATOMS))
def test_cnf_equivalent(f):
    cnf = to_cnf(f)
    for bits in iter_assignments(len(_ATOMS)):
        val = dict(zip(_ATOMS, bits))
        want = evaluate(f, val.__getitem__)
        got = all(any(val[a] == pos for a, pos in cl) for cl in cnf)
        assert got == want
