"""EUF + DIF: purification and equality exchange over shared variables."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from .circuit import CircuitStore
from .dif import DifTheory
from .euf import EufTheory
from .logic import (
    APP, SHIFT, VAR, DifEdge, DifEq, DifNe, EufEq, Predicate, TermStore, facts,
)
from .saturation import DpResult, Verdict, dp_check
from .sdp import negated_goal_facts, saturate, seed_map

_EQ, _EDGE, _NE, _DEQ = 0, 1, 2, 3

EUF, DIF, MIXED = "euf", "dif", "mixed"


def _euf_pure(store: TermStore, p) -> bool:
    if p[0] != _EQ:
        return False
    return all(store.kind[t] != SHIFT for t in store.subterms(p[1]) | store.subterms(p[2]))


def _dif_pure(store: TermStore, p) -> bool:
    return p[0] != _EQ and store.kind[p[1]] == VAR and store.kind[p[2]] == VAR


def theory_of(store: TermStore, preds: Iterable[Predicate]) -> str:
    preds = list(preds)
    if all(_euf_pure(store, p) for p in preds):
        return EUF
    if all(_dif_pure(store, p) for p in preds):
        return DIF
    return MIXED


# --------------------------------------------------------------------------
# purification


@dataclass
class PurifiedProblem:
    items: list            # (original predicate, purified predicate)
    bindings: list         # (binding predicate, owner theory)
    shared: frozenset      # variables occurring in both theories
    euf_terms: frozenset = field(default_factory=frozenset)

    def theory_facts(self, which: str) -> list[Predicate]:
        out = []
        for _, q in self.items:
            if (q[0] == _EQ) == (which == EUF):
                out.extend(facts(q))
        for b, owner in self.bindings:
            if owner == which:
                out.extend(facts(b))
        return out


class Purifier:
    """Replaces alien subterms by fresh variables ``w1, w2, ...``.

    The alien-term table lives on the term store, so purifying the same
    term twice (for instance for two subsets of one input) yields the same
    fresh variable.
    """

    def __init__(self, store: TermStore):
        self.store = store
        table = getattr(store, "_aliens", None)
        if table is None:
            table = store._aliens = {}
            store._binding = {}
        self.aliens: dict[int, int] = table
        self.binding: dict[int, tuple] = store._binding
        self.used: dict[int, None] = {}

    def _alien(self, t: int) -> int:
        store = self.store
        w = self.aliens.get(t)
        if w is None:
            w = store.fresh_var("w")
            self.aliens[t] = w
            if store.kind[t] == APP:
                rhs = store.app(store.head[t], [self.term(a, EUF) for a in store.args[t]])
                self.binding[w] = (EufEq(w, rhs), EUF)
            else:
                base, c = store.split_offset(t)
                self.binding[w] = (DifEq(w, self.term(base, DIF), c), DIF)
        else:
            # make sure nested aliens of a reused term are recorded as used
            if store.kind[t] == APP:
                for a in store.args[t]:
                    self.term(a, EUF)
            else:
                self.term(store.split_offset(t)[0], DIF)
        self.used.setdefault(w, None)
        return w

    def term(self, t: int, ctx: str) -> int:
        store = self.store
        k = store.kind[t]
        if k == VAR:
            return t
        if ctx == EUF:
            if k == APP:
                return store.app(store.head[t], [self.term(a, EUF) for a in store.args[t]])
            return self._alien(t)
        return self._alien(t)

    def predicate(self, p: Predicate) -> Predicate:
        tag = p[0]
        if tag == _EQ:
            return EufEq(self.term(p[1], EUF), self.term(p[2], EUF), p[3])
        a, b = self.term(p[1], DIF), self.term(p[2], DIF)
        if tag == _EDGE:
            return DifEdge(a, b, p[3], p[4])
        if tag == _DEQ:
            return DifEq(a, b, p[3])
        return DifNe(a, b, p[3])


def purify(store: TermStore, preds: Iterable[Predicate]) -> PurifiedProblem:
    pur = Purifier(store)
    items = [(p, pur.predicate(p)) for p in preds]
    bindings = [pur.binding[w] for w in pur.used]
    euf_vars, dif_vars, euf_terms = set(), set(), set()
    for q, owner in [(q, EUF if q[0] == _EQ else DIF) for _, q in items] + bindings:
        if owner == EUF:
            ts = store.subterms(q[1]) | store.subterms(q[2])
            euf_terms |= ts
            euf_vars.update(t for t in ts if store.kind[t] == VAR)
        else:
            dif_vars.update((q[1], q[2]))
    return PurifiedProblem(items, bindings, frozenset(euf_vars & dif_vars), frozenset(euf_terms))


# --------------------------------------------------------------------------
# concrete combination


def _rounds(shared) -> int:
    return max(1, len(shared))


def dp_combined(store: TermStore, G: Iterable[Predicate]) -> DpResult:
    """Alternate EUF and DIF saturation, exchanging shared variable equalities."""
    pp = purify(store, G)
    euf_g = pp.theory_facts(EUF)
    dif_g = pp.theory_facts(DIF)
    euf = EufTheory(store).bind(euf_g)
    dif = DifTheory().bind(dif_g)
    shared = pp.shared
    delta: set = set()
    W = set()
    rounds = 0
    for _ in range(_rounds(shared)):
        rounds += 1
        before = len(delta)
        for th, base in ((euf, euf_g), (dif, dif_g)):
            G_i = list(base)
            for d in delta:
                G_i.extend(th.encode_equality(d))
            res = dp_check(th, G_i)
            W |= res.facts
            if res.unsat:
                return DpResult(Verdict.UNSAT, frozenset(W), rounds, res.conflicts)
            for eq, _ants in th.shared_equalities(res.facts):
                if eq[1] in shared and eq[2] in shared:
                    delta.add(eq)
        if len(delta) == before:
            break
    return DpResult(Verdict.SAT, frozenset(W), rounds)


def decide(store: TermStore, preds: Iterable[Predicate]) -> Verdict:
    """Satisfiability of a conjunction of predicates."""
    preds = list(preds)
    kind = theory_of(store, preds)
    if kind == EUF:
        return dp_check(EufTheory(store), preds).verdict
    if kind == DIF:
        return dp_check(DifTheory(), preds).verdict
    return dp_combined(store, preds).verdict


# --------------------------------------------------------------------------
# symbolic combination


@dataclass
class CombinedResult:
    root: object
    psi: dict
    store: object
    rounds: int
    purified: PurifiedProblem
    iterations: dict = field(default_factory=dict)

    def eval(self, subset) -> bool:
        return self.store.eval(self.root, set(subset))

    def stats(self) -> dict:
        s = dict(self.store.stats(self.root))
        s["rounds"] = self.rounds
        return s


def combined_saturation(store: TermStore, pairs: list, alg) -> CombinedResult:
    """Symbolic combination from ``(predicate, expression)`` seeds.

    Binding predicates are seeded ``true``.  Each shared equality carries
    the disjunction of the expressions under which either theory has
    derived it; it is fed to the next saturation as a seed.
    """
    pp = purify(store, [p for p, _ in pairs])
    seeds = {EUF: [], DIF: []}
    for (_, q), (_, expr) in zip(pp.items, pairs):
        seeds[EUF if q[0] == _EQ else DIF].append((q, expr))
    for b, owner in pp.bindings:
        seeds[owner].append((b, alg.true()))
    theories = {}
    depth = {}
    for name, cls in ((EUF, lambda: EufTheory(store)), (DIF, DifTheory)):
        fs = [f for q, _ in seeds[name] for f in facts(q)]
        theories[name] = cls().bind(fs)
        depth[name] = theories[name].depth_bound(fs)
    shared = pp.shared
    psi: dict = {}
    psi_e = None
    rounds = 0
    for _ in range(_rounds(shared)):
        rounds += 1
        changed = False
        for name in (EUF, DIF):
            th = theories[name]
            if not seeds[name] and not psi:
                continue
            groups = list(seeds[name])
            for d, expr in psi.items():
                groups.extend((f, expr) for f in th.encode_equality(d))
            seed = seed_map(alg, groups)
            res = saturate(th, seed, alg, depth[name])
            new_e = alg.extend(psi_e, [res.root])
            if new_e != psi_e:
                psi_e, changed = new_e, True
            contrib = defaultdict(list)
            for eq, ants in th.shared_equalities(res.tops.keys()):
                if eq[1] in shared and eq[2] in shared:
                    contrib[eq].append(alg.and_([res.tops[a] for a in ants]))
            for eq, terms in contrib.items():
                new = alg.extend(psi.get(eq), terms)
                if new is not None and new != psi.get(eq):
                    psi[eq] = new
                    changed = True
        if not changed:
            break
    return CombinedResult(psi_e, psi, alg, rounds, pp, depth)


def sdp_combined(store: TermStore, G: Iterable[Predicate], E: Iterable[Predicate],
                 circuit: CircuitStore | None = None) -> CombinedResult:
    circuit = CircuitStore() if circuit is None else circuit
    G = list(dict.fromkeys(G))
    pairs = [(g, circuit.leaf(g)) for g in G]
    pairs += [(f, circuit.true()) for f in negated_goal_facts(E)]
    return combined_saturation(store, pairs, circuit)


def symbolic(store: TermStore, pairs: list, alg, *, iterations: int | None = None):
    """Symbolic refutation expression for seeded predicates, any theory mix.

    Returns ``(root, info)``.
    """
    kind = theory_of(store, [p for p, _ in pairs])
    if kind == MIXED:
        res = combined_saturation(store, pairs, alg)
        return res.root, {"theory": kind, "rounds": res.rounds}
    th = EufTheory(store) if kind == EUF else DifTheory()
    seeds = seed_map(alg, pairs)
    fs = list(seeds)
    th = th.bind(fs)
    d = th.depth_bound(fs) if iterations is None else iterations
    res = saturate(th, seeds, alg, d)
    return res.root, {"theory": kind, "iterations": d, "rounds": res.rounds_run}


def symbolic_refutation(store: TermStore, G: Iterable[Predicate], E: Iterable[Predicate],
                        circuit: CircuitStore | None = None):
    """Circuit over leaves ``b_g`` refuting ``not(E)``, dispatching on the theory mix."""
    circuit = CircuitStore() if circuit is None else circuit
    G = list(dict.fromkeys(G))
    pairs = [(g, circuit.leaf(g)) for g in G]
    pairs += [(f, circuit.true()) for f in negated_goal_facts(E)]
    root, info = symbolic(store, pairs, circuit)
    return root, circuit, info
