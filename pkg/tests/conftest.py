import pytest

from sdpabs.logic import TermStore
from sdpabs.parser import parse_problem


def preds(text, store=None):
    """Parse a sequence of atoms into (store, predicates)."""
    prob = parse_problem(f"(predicates {text})", store, require_goal=False)
    return prob.store, prob.predicates


def pred(text, store):
    return preds(text, store)[1][0]


@pytest.fixture
def store():
    return TermStore()


@pytest.fixture
def square():
    """Four-edge square a-b-c, a-d-c with the goal a = c."""
    st, G = preds("(= a b) (= b c) (= a d) (= d c)")
    E = [pred("(= a c)", st)]
    return st, G, E
