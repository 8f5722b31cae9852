import pytest

from sdpabs.errors import ParseError
from sdpabs.logic import Atom, DifEdge, DifNe, EufEq, Not, Or
from sdpabs.parser import parse_goal, parse_problem


def test_parse_problem():
    prob = parse_problem("""
        ; comment
        (predicates (= a b) (<= x (+ y 1)) (!= (f a) c))
        (goal (or (= a c) (not (< x 5))))
    """)
    s = prob.store
    a, b, x, y = (s.lookup_var(n) for n in "abxy")
    assert prob.predicates[0] == EufEq(a, b)
    assert prob.predicates[1] == DifEdge(x, y, False, 1)
    assert isinstance(prob.goal, Or)
    assert isinstance(prob.goal.children[1], Not)
    assert prob.label(2) == "(!= (f a) c)"
    assert prob.theory == "mixed"


def test_duplicates_removed():
    prob = parse_problem("(predicates (= a b) (= b a)) (goal true)")
    assert len(prob.predicates) == 1


def test_goal_override():
    prob = parse_problem("(predicates (= a b))", require_goal=False)
    g = parse_goal("(goal (= a b))", prob.store)
    assert g == Atom(prob.predicates[0])


def test_negative_constant():
    prob = parse_problem("(predicates (!= x -3)) (goal false)")
    assert isinstance(prob.predicates[0], DifNe)


@pytest.mark.parametrize("text, where", [
    ("(predicates (= a b)", "1:1"),
    ("(predicates (= a b)))", "1:21"),
    ("(predicates (~ a b)) (goal true)", "1:14"),
    ("(predicates (= a)) (goal true)", "1:13"),
    ("(predicates (= x0 a)) (goal true)", "1:16"),
    ("(goal (= a b))", "1:1"),
    ("(predicates (= a b))", "1:1"),
    ("(predicates (<= x (+ y z))) (goal true)", "1:24"),
    ("(predicates (= a b))\n(goal (and))", "2:7"),
])
def test_errors_have_positions(text, where):
    with pytest.raises(ParseError) as exc:
        parse_problem(text)
    assert str(exc.value).startswith(where), str(exc.value)
