"""Cross-checks between the symbolic procedures and the concrete ones.

Used by ``sdpabs selftest`` and by the test-suite.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .combine import dp_combined, sdp_combined, theory_of
from .dif import DifTheory, negative_cycle_oracle
from .euf import EufTheory, congruence_closure_oracle
from .gen import gen_diamond, random_dif, random_euf, random_mixed
from .logic import Atom, Or
from .predabs import abstract_clause, brute_force_Fp, minterms_bdd
from .saturation import Verdict, dp_check
from .sdp import negated_goal_facts, sdp


def subset_masks(k: int) -> tuple[list[int], int]:
    """Bit patterns of ``k`` leaves over all ``2**k`` subsets, and the all-ones pattern."""
    n = 1 << k
    masks = []
    for j in range(k):
        block = ((1 << (1 << j)) - 1) << (1 << j)   # 2^j zeros then 2^j ones
        period = 1 << (j + 1)
        m = 0
        for start in range(0, n, period):
            m |= block << start
        masks.append(m)
    return masks, (1 << n) - 1


def subset(G, s: int) -> list:
    return [g for j, g in enumerate(G) if s >> j & 1]


@dataclass
class SubsetReport:
    subsets: int = 0
    mismatches: list = field(default_factory=list)


def sdp_vs_dp(store, G, E, theory_name: str | None = None) -> SubsetReport:
    """Compare the refutation circuit with the concrete procedure on every subset of ``G``."""
    G = list(dict.fromkeys(G))
    kind = theory_name or theory_of(store, list(G) + list(E))
    Et = negated_goal_facts(E)
    if kind == "mixed":
        res = sdp_combined(store, G, E)
        circuit, root = res.store, res.root

        def concrete(S):
            return dp_combined(store, S + Et).verdict
    else:
        th = EufTheory(store) if kind == "euf" else DifTheory()
        res = sdp(th, G, E)
        circuit, root = res.store, res.root
        make = (lambda: EufTheory(store)) if kind == "euf" else DifTheory

        def concrete(S):
            return dp_check(make(), S + Et).verdict
    masks, full = subset_masks(len(G))
    (value,) = circuit.eval_masks([root], {g: masks[j] for j, g in enumerate(G)}, full)
    rep = SubsetReport()
    for s in range(1 << len(G)):
        rep.subsets += 1
        sym = bool(value >> s & 1)
        con = concrete(subset(G, s)) is Verdict.UNSAT
        if sym != con:
            rep.mismatches.append((s, sym, con))
    return rep


def theory_oracle_mismatches(kind: str, count: int, seed: int = 0, **kw) -> list:
    rng = random.Random(seed)
    bad = []
    for i in range(count):
        if kind == "euf":
            inst = random_euf(rng, **kw)
            G = inst.G + inst.E
            got = dp_check(EufTheory(inst.store), G).verdict
            want = congruence_closure_oracle(inst.store, G)
        else:
            inst = random_dif(rng, **kw)
            G = inst.G + inst.E
            got = dp_check(DifTheory(), G).verdict
            want = negative_cycle_oracle(G)
        if got is not want:
            bad.append((i, inst, got, want))
    return bad


def predabs_mismatch(store, P, E) -> bool:
    """Whether the symbolic cover of clause ``E`` differs from enumeration."""
    cubes, mgr, res = abstract_clause(store, P, E)
    goal = Or(tuple(Atom(e) for e in E))
    brute = brute_force_Fp(store, P, goal)
    ref = minterms_bdd(mgr, brute)
    return ref != res.F


def run_selftest(seed: int = 0, quick: bool = True) -> list[tuple[str, bool, str]]:
    rng = random.Random(seed)
    n = 40 if quick else 500
    results = []

    bad = theory_oracle_mismatches("euf", n, seed)
    results.append(("euf saturation vs congruence closure", not bad, f"{n} instances"))
    bad = theory_oracle_mismatches("dif", n, seed)
    results.append(("dif saturation vs negative cycles", not bad, f"{n} instances"))

    mism = 0
    for _ in range(5):
        inst = random_euf(rng, size=6)
        mism += len(sdp_vs_dp(inst.store, inst.G, inst.E).mismatches)
        inst = random_dif(rng, size=6)
        mism += len(sdp_vs_dp(inst.store, inst.G, inst.E).mismatches)
    results.append(("symbolic vs concrete on all subsets", mism == 0, f"{mism} mismatches"))

    mism = 0
    for _ in range(3):
        inst = random_mixed(rng, size=5)
        mism += len(sdp_vs_dp(inst.store, inst.G, inst.E, "mixed").mismatches)
    results.append(("combined symbolic vs combined concrete", mism == 0, f"{mism} mismatches"))

    mism = 0
    for _ in range(5):
        inst = random_euf(rng, size=5, n_goal=2)
        mism += predabs_mismatch(inst.store, inst.G, inst.E)
    results.append(("abstraction vs minterm enumeration", mism == 0, f"{mism} mismatches"))

    from .predabs import abstract_formula
    ok = True
    for k in range(1, 5):
        prob = gen_diamond(k)
        res = abstract_formula(prob.store, prob.predicates, prob.goal)
        ok &= len(prob.predicates) == 5 * k - 1 and len(res.cubes) == 2 ** k
    results.append(("diamond prime counts", ok, "n = 1..4"))
    return results
