"""Symbolic saturation: every derived fact carries the expression of the
input subsets under which it is derived.

The engine is generic in the Boolean algebra holding these expressions.
:class:`~sdpabs.circuit.CircuitStore` builds a shared monotone circuit;
:class:`~sdpabs.bdd.BddAlgebra` builds BDDs directly.  ``None`` is the
absent (false) expression in both.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from .circuit import CircuitStore
from .logic import Predicate, facts, negate
from .saturation import Theory


@dataclass
class SaturationResult:
    root: object
    tops: dict
    iterations: int
    rounds_run: int
    trace: list | None = None


@dataclass
class SdpResult:
    root: object
    tops: dict
    store: object
    theory: Theory
    iterations: int
    rounds_run: int
    leaves: list = field(default_factory=list)
    trace: list | None = None

    def eval(self, subset) -> bool:
        return self.store.eval(self.root, set(subset))

    def stats(self) -> dict:
        s = dict(self.store.stats(self.root))
        s["iterations"] = self.iterations
        return s


def saturate(theory: Theory, seeds: dict, alg, iterations: int, *,
             early_stop: bool = False, trace: bool = False) -> SaturationResult:
    """Run ``iterations`` symbolic saturation rounds from ``seeds`` (fact -> expression).

    Only derivations with an antecedent whose expression changed in the
    previous round are recombined; the others would rebuild conjunctions
    that are already disjuncts of their conclusion.  Once a round changes
    no expression, every later round is identical and is skipped.

    ``early_stop`` instead stops after the first round that derives no new
    fact.  It exists only as a negative control: the result is incomplete.
    """
    cur = {f: e for f, e in seeds.items() if e is not None}
    changed = set(cur)
    snaps = [] if trace else None
    rounds = 0
    for _ in range(iterations):
        if not changed:
            if trace:
                snaps.append(dict(cur))
            continue
        rounds += 1
        contrib = defaultdict(list)
        for concl, ants in theory.infer(cur.keys(), changed):
            contrib[concl].append(alg.and_([cur[a] for a in ants]))
        nxt = dict(cur)
        changed = set()
        grew = False
        for concl, terms in contrib.items():
            prev = cur.get(concl)
            new = alg.extend(prev, terms)
            if new is None:
                continue
            if prev is None:
                grew = True
            if new != prev:
                nxt[concl] = new
                changed.add(concl)
        cur = nxt
        if trace:
            snaps.append(dict(cur))
        if early_stop and not grew:
            break
    ands = [alg.and_([cur[a] for a in ants]) for ants in theory.contradictions(cur.keys())]
    root = alg.or_(ands)
    return SaturationResult(root, cur, iterations, rounds, snaps)


def negated_goal_facts(E: Iterable[Predicate]) -> list[Predicate]:
    out = []
    for e in E:
        for f in facts(negate(e)):
            if f not in out:
                out.append(f)
    return out


def seed_map(alg, groups) -> dict:
    """Merge ``(predicate, expression)`` pairs into a fact -> expression map."""
    acc = defaultdict(list)
    for p, expr in groups:
        for f in facts(p):
            acc[f].append(expr)
    return {f: alg.or_(exprs) for f, exprs in acc.items()}


def sdp(theory: Theory, G: Iterable[Predicate], E: Iterable[Predicate], store=None, *,
        early_stop: bool = False, trace: bool = False, iterations: int | None = None) -> SdpResult:
    """Expression over leaves ``b_g`` (``g`` in ``G``) that is true exactly on
    the subsets ``G'`` for which ``G' + not(E)`` is contradictory."""
    store = CircuitStore() if store is None else store
    G = list(dict.fromkeys(G))
    Etilde = negated_goal_facts(E)
    pairs = [(g, store.leaf(g)) for g in G] + [(f, store.true()) for f in Etilde]
    seeds = seed_map(store, pairs)
    all_facts = list(seeds)
    th = theory.bind(all_facts)
    d = th.depth_bound(all_facts) if iterations is None else iterations
    res = saturate(th, seeds, store, d, early_stop=early_stop, trace=trace)
    return SdpResult(res.root, res.tops, store, th, d, res.rounds_run, G, res.trace)
