import random

from sdpabs.gen import diamond_text, eq_chain, gen_diamond, near_complete, random_dif, random_euf, random_mixed
from sdpabs.combine import theory_of
from sdpabs.saturation import dp_check
from sdpabs.euf import EufTheory


def test_diamond_predicate_count():
    for n in range(1, 13):
        assert len(gen_diamond(n).predicates) == 5 * n - 1


def test_diamond_text_is_stable():
    assert diamond_text(1) == "(predicates\n  (= a1 b1) (= b1 d1) (= a1 c1) (= c1 d1)\n)\n(goal (= a1 d1))\n"


def test_generators_are_seeded():
    for make in (random_euf, random_dif, random_mixed):
        a = make(random.Random(7), size=6)
        b = make(random.Random(7), size=6)
        assert a.G == b.G and a.E == b.E
        assert len(set(a.G)) == len(a.G)


def test_generator_theories():
    rng = random.Random(1)
    for _ in range(20):
        assert theory_of(*_split(random_euf(rng))) == "euf"
        assert theory_of(*_split(random_dif(rng))) == "dif"


def _split(inst):
    return inst.store, inst.G + inst.E


def test_near_complete_shape():
    st, G, E, chain = near_complete(5)
    assert len(G) == 5 * 4 // 2 - 1
    assert set(chain) <= set(G)
    assert E[0] not in G


def test_eq_chain_unsat():
    st, G = eq_chain(6)
    assert dp_check(EufTheory(st), G).unsat
    assert not dp_check(EufTheory(st), G[1:]).unsat
