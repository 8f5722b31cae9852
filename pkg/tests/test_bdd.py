import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from sdpabs.bdd import BDD, BddAlgebra, bdd_equiv, build_bdd, sift
from sdpabs.circuit import CircuitStore
from sdpabs.errors import CubeLimit, NodeLimit


def from_table(mgr, n, table):
    """BDD of the function whose value on assignment ``k`` is bit ``k`` of ``table``."""
    cubes = [tuple((i, bool(k >> i & 1)) for i in range(n)) for k in range(1 << n) if table >> k & 1]
    return mgr.from_cubes(cubes)


def assignments(n):
    return [[bool(k >> i & 1) for i in range(n)] for k in range(1 << n)]


def covers(cube, a):
    return all(a[v] == pol for v, pol in cube)


def brute_primes(n, table):
    pts = [a for k, a in enumerate(assignments(n)) if table >> k & 1]
    allk = assignments(n)

    def implicant(c):
        return all(table >> k & 1 for k, a in enumerate(allk) if covers(c, a))

    out = set()
    for choice in itertools.product((None, False, True), repeat=n):
        c = tuple((i, p) for i, p in enumerate(choice) if p is not None)
        if not implicant(c):
            continue
        if all(not implicant(c[:j] + c[j + 1:]) for j in range(len(c))):
            out.add(c)
    assert all(any(covers(c, a) for c in out) for a in pts)
    return out


def test_terminals_and_vars():
    m = BDD(3)
    x, y = m.var(0), m.var(1)
    assert m.and2(x, m.not_(x)) == 0
    assert m.or2(x, m.not_(x)) == 1
    assert m.and2(x, y) == m.and2(y, x)
    assert m.not_(m.not_(x)) == x
    assert m.nvar(2) == m.not_(m.var(2))
    assert m.implies(m.and2(x, y), x)
    assert not m.implies(x, m.and2(x, y))


def test_restrict_and_exists():
    m = BDD(3)
    f = m.or2(m.and2(m.var(0), m.var(1)), m.var(2))
    assert m.restrict(f, 2, True) == 1
    assert m.restrict(f, 2, False) == m.and2(m.var(0), m.var(1))
    assert m.exists(f, [0]) == m.or2(m.var(1), m.var(2))
    assert m.restrict_cube(f, ((0, True), (1, True))) == 1
    assert m.support(f) == {0, 1, 2}


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << (1 << n)) - 1))))
def test_truth_table_roundtrip(case):
    n, table = case
    m = BDD(n)
    f = from_table(m, n, table)
    for k, a in enumerate(assignments(n)):
        assert m.eval(f, a) == bool(table >> k & 1)
    assert m.count_minterms(f, n) == bin(table).count("1")
    m.audit()


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << (1 << n)) - 1))))
def test_prime_implicants_match_brute_force(case):
    n, table = case
    m = BDD(n)
    f = from_table(m, n, table)
    primes = m.prime_implicants(f)
    assert set(primes) == brute_primes(n, table)
    assert len(primes) == len(set(primes))
    assert all(list(c) == sorted(c) for c in primes)


def test_prime_implicant_order_and_constants():
    m = BDD(2)
    assert m.prime_implicants(0) == []
    assert m.prime_implicants(1) == [()]
    f = m.or2(m.var(0), m.and2(m.nvar(0), m.var(1)))
    assert m.prime_implicants(f) == [((0, True),), ((1, True),)]


def random_circuit(rng, leaves, size):
    c = CircuitStore()
    nodes = [c.leaf(k) for k in leaves]
    for _ in range(size):
        kids = rng.sample(nodes, rng.randint(2, min(3, len(nodes))))
        nodes.append(c.and_(kids) if rng.random() < 0.5 else c.or_(kids))
    return c, nodes[-1]


def test_random_circuits_match_evaluation():
    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(2, 6)
        c, root = random_circuit(rng, range(n), rng.randint(1, 12))
        m = BDD(n)
        f = build_bdd(c, root, m, m.var)
        for a in assignments(n):
            assert m.eval(f, a) == c.eval(root, lambda k: a[k])
        m.audit()


def test_equiv_and_transfer():
    rng = random.Random(5)
    for _ in range(30):
        n = 4
        table = rng.randrange(1 << 16)
        m1, m2 = BDD(n), BDD(n)
        f1, f2 = from_table(m1, n, table), from_table(m2, n, table)
        assert bdd_equiv(m1, f1, m2, f2)
        perm = list(range(n))
        rng.shuffle(perm)
        m3 = BDD(n)
        f3 = m1.transfer(f1, m3, perm)
        for a in assignments(n):
            b = [None] * n
            for v in range(n):
                b[perm[v]] = a[v]
            assert m3.eval(f3, b) == m1.eval(f1, a)


def test_sift_keeps_function_and_never_grows():
    # (x0 & x3) | (x1 & x4) | (x2 & x5): interleaved order is small, input order is large
    m = BDD(6)
    f = m.disj(m.and2(m.var(i), m.var(i + 3)) for i in range(3))
    m2, (g,), order = sift(m, [f])
    assert m2.size(g) <= m.size(f)
    assert m2.size(g) < m.size(f)
    pos = {v: i for i, v in enumerate(order)}
    for a in assignments(6):
        b = [None] * 6
        for v in range(6):
            b[pos[v]] = a[v]
        assert m2.eval(g, b) == m.eval(f, a)


def test_node_limit():
    m = BDD(16, node_cap=20)
    with pytest.raises(NodeLimit):
        m.disj(m.and2(m.var(i), m.var(i + 8)) for i in range(8))


def test_cube_limit():
    m = BDD(8)
    f = m.disj(m.and2(m.var(2 * i), m.var(2 * i + 1)) for i in range(4))
    g = m.conj(m.or2(m.var(2 * i), m.var(2 * i + 1)) for i in range(4))
    assert len(m.prime_implicants(f)) == 4
    assert len(m.prime_implicants(g)) == 16
    with pytest.raises(CubeLimit):
        m.prime_implicants(g, cap=10)


def test_algebra_uses_none_for_false():
    m = BDD(2)
    alg = BddAlgebra(m)
    assert alg.and_([m.var(0), m.nvar(0)]) is None
    assert alg.or_([None, None]) is None
    assert alg.extend(None, [m.var(1)]) == m.var(1)
    assert alg.and_([m.var(0), None]) is None
