"""Weakest Boolean cover of a goal over a fixed predicate set.

For a goal ``e`` and predicates ``P``, the result is the disjunction of all
cubes over ``P`` that imply ``e``, reported as prime implicants.

A clause goal is handled in one symbolic saturation computed directly in
BDD form: ``b_p`` is BDD variable ``p``, ``b_not_p`` its complement, so
only minterms are ever considered.  The negated goal facts are guarded by
one extra selector variable ``g``: with ``g`` true the root is the cover
``F``; with ``g`` false it is the set ``U`` of minterms that are
inconsistent by themselves.  ``U`` is part of ``F`` (an inconsistent
minterm implies anything); a prime implicant lying entirely inside ``U``
says nothing about the goal and is not reported.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .bdd import DEFAULT_CUBE_CAP, DEFAULT_NODE_CAP, BDD, BddAlgebra, sift
from .circuit import CircuitStore
from .combine import decide, symbolic
from .errors import CapExceeded
from .logic import (
    Formula, Predicate, TermStore, iter_assignments, literal_predicate, negate,
    render_predicate, to_cnf,
)
from .saturation import Verdict
from .sdp import negated_goal_facts

BRUTE_FORCE_CAP = 16


@dataclass
class ClauseResult:
    F: int
    U: int
    stats: dict


@dataclass
class AbstractionResult:
    predicates: list
    cubes: list
    clause_cubes: list
    exact: bool
    reasons: list
    mgr: BDD
    F: int
    U: int
    stats: dict = field(default_factory=dict)

    def literal(self, store: TermStore, index: int, polarity: bool, labels=None) -> str:
        text = labels[index] if labels else render_predicate(store, self.predicates[index])
        return text if polarity else "!" + text

    def cube_strings(self, store: TermStore, labels=None) -> list[list[str]]:
        return [[self.literal(store, i, pol, labels) for i, pol in c] for c in self.cubes]

    def lines(self, store: TermStore, labels=None) -> list[str]:
        return [" ".join(c) if c else "true" for c in self.cube_strings(store, labels)]


def _cube_key(c):
    return tuple((i, not pol) for i, pol in c)


def _seed_pairs(P: Sequence[Predicate], E: Sequence[Predicate], mgr: BDD):
    n = len(P)
    pairs = []
    for i, p in enumerate(P):
        pairs.append((p, mgr.var(i)))
        pairs.append((negate(p), mgr.nvar(i)))
    selector = mgr.var(n)
    pairs += [(f, selector) for f in negated_goal_facts(E)]
    return pairs


def clause_bdds(store: TermStore, P: Sequence[Predicate], E: Sequence[Predicate], mgr: BDD) -> ClauseResult:
    """``F`` and ``U`` of one clause goal (``E`` lists its disjuncts as predicates)."""
    n = len(P)
    alg = BddAlgebra(mgr)
    t0 = time.perf_counter()
    root, info = symbolic(store, _seed_pairs(P, E, mgr), alg)
    R = 0 if root is None else root
    F = mgr.restrict(R, n, True)
    U = mgr.restrict(R, n, False)
    info["time_sdp"] = time.perf_counter() - t0
    return ClauseResult(F, U, info)


def _clause_preds(clause) -> list[Predicate]:
    return [literal_predicate(lit) for lit in sorted(clause)]


def relevant_primes(mgr: BDD, F: int, U: int, cap: int = DEFAULT_CUBE_CAP) -> list:
    """Prime implicants of ``F`` that are not contained in ``U``."""
    primes = mgr.prime_implicants(F, cap)
    return [c for c in primes if mgr.restrict_cube(U, c) != 1]


def abstract_clause(store: TermStore, P: Sequence[Predicate], E: Sequence[Predicate], *,
                    node_cap: int = DEFAULT_NODE_CAP, cube_cap: int = DEFAULT_CUBE_CAP):
    """Cubes over ``P`` (as ``(index, polarity)`` tuples) implying ``OR(E)``."""
    mgr = BDD(len(P) + 1, node_cap)
    res = clause_bdds(store, list(P), list(E), mgr)
    cubes = sorted(relevant_primes(mgr, res.F, res.U, cube_cap), key=_cube_key)
    return cubes, mgr, res


def _clause_worker(args):
    store, P, E, node_cap, cube_cap = args
    mgr = BDD(len(P) + 1, node_cap)
    res = clause_bdds(store, P, E, mgr)
    return (mgr.prime_implicants(res.F, cube_cap), mgr.prime_implicants(res.U, cube_cap), res.stats)


def abstract_formula(store: TermStore, P: Sequence[Predicate], goal: Formula, *,
                     underapprox_disjunction: bool = False, order: str = "input",
                     node_cap: int = DEFAULT_NODE_CAP, cube_cap: int = DEFAULT_CUBE_CAP,
                     jobs: int = 1) -> AbstractionResult:
    """Cover of an arbitrary goal: conjunction of the covers of its CNF clauses.

    With ``underapprox_disjunction`` each clause is replaced by the
    disjunction of the covers of its literals, which may be weaker.
    """
    P = list(P)
    n = len(P)
    clauses = to_cnf(goal)
    mgr = BDD(n + 1, node_cap)
    reasons: list[str] = []
    times = {"sdp": 0.0, "bdd": 0.0, "pi": 0.0}

    tasks = []
    for cl in clauses:
        preds = _clause_preds(cl)
        if underapprox_disjunction and len(preds) > 1:
            reasons.append("disjunctive clause split into literals")
            tasks.append([[e] for e in preds])
        else:
            tasks.append([preds])
    flat = [E for group in tasks for E in group]

    t0 = time.perf_counter()
    results = []
    if jobs > 1 and len(flat) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            outs = list(ex.map(_clause_worker, [(store, P, E, node_cap, cube_cap) for E in flat]))
        for F_cubes, U_cubes, info in outs:
            results.append(ClauseResult(mgr.from_cubes(F_cubes), mgr.from_cubes(U_cubes), info))
    else:
        results = [clause_bdds(store, P, E, mgr) for E in flat]
    times["sdp"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    U = _inconsistent_minterms(store, P, mgr) if not results else results[0].U
    F = 1
    k = 0
    clause_F = []
    for group in tasks:
        part = 0
        for _ in group:
            part = mgr.or2(part, results[k].F)
            k += 1
        clause_F.append(part)
        F = mgr.and2(F, part)
    perm = None
    if order == "sift":
        new_mgr, (F2, U2), perm = sift(mgr, [F, U], n + 1)
        pi_mgr, pi_F, pi_U = new_mgr, F2, U2
    else:
        pi_mgr, pi_F, pi_U = mgr, F, U
    times["bdd"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    cubes = relevant_primes(pi_mgr, pi_F, pi_U, cube_cap)
    if perm is not None:
        cubes = [tuple(sorted((perm[v], pol) for v, pol in c)) for c in cubes]
    cubes.sort(key=_cube_key)
    if len(clause_F) == 1 and perm is None:
        clause_cubes = [list(cubes)]
    else:
        clause_cubes = [sorted(relevant_primes(mgr, f, U, cube_cap), key=_cube_key) for f in clause_F]
    times["pi"] = time.perf_counter() - t0

    stats = {
        "circuit_nodes": None,
        "bdd_nodes": pi_mgr.size(pi_F),
        "primes": len(cubes),
        "time_ms": {k_: round(v * 1000, 3) for k_, v in times.items()},
    }
    return AbstractionResult(P, cubes, clause_cubes, not reasons, reasons, mgr, F, U, stats)


def _inconsistent_minterms(store, P, mgr) -> int:
    """``U`` for a goal without clauses (a valid goal)."""
    return clause_bdds(store, P, [], mgr).U


def abstraction_circuits(store: TermStore, P: Sequence[Predicate], goal: Formula):
    """Refutation circuits (one per CNF clause) over literal leaves ``(index, polarity)``."""
    circuit = CircuitStore()
    roots = []
    for cl in to_cnf(goal):
        pairs = []
        for i, p in enumerate(P):
            pairs.append((p, circuit.leaf((i, True))))
            pairs.append((negate(p), circuit.leaf((i, False))))
        pairs += [(f, circuit.true()) for f in negated_goal_facts(_clause_preds(cl))]
        root, _ = symbolic(store, pairs, circuit)
        roots.append(root)
    return circuit, roots


# --------------------------------------------------------------------------
# reference implementation by enumeration


class _Decider:
    def __init__(self, store):
        self.store = store
        self.memo: dict[frozenset, Verdict] = {}

    def __call__(self, preds) -> Verdict:
        key = frozenset(preds)
        v = self.memo.get(key)
        if v is None:
            v = decide(self.store, key)
            self.memo[key] = v
        return v


def minterm_literals(P, bits) -> list[Predicate]:
    return [p if b else negate(p) for p, b in zip(P, bits)]


def brute_force_Fp(store: TermStore, P: Sequence[Predicate], goal: Formula,
                   cap: int = BRUTE_FORCE_CAP, decider=None) -> list[tuple]:
    """Minterms over ``P`` (as bit tuples) that imply ``goal``, by enumeration."""
    P = list(P)
    if len(P) > cap:
        raise CapExceeded(f"{len(P)} predicates exceed the enumeration cap {cap}")
    decider = decider or _Decider(store)
    clauses = [negated_goal_facts(_clause_preds(cl)) for cl in to_cnf(goal)]
    out = []
    for bits in iter_assignments(len(P)):
        lits = minterm_literals(P, bits)
        if all(decider(lits + N) is Verdict.UNSAT for N in clauses):
            out.append(bits)
    return out


def minterms_bdd(mgr: BDD, minterms) -> int:
    return mgr.from_cubes(tuple(enumerate(bits)) for bits in minterms)


def check_implies_goal(store: TermStore, P: Sequence[Predicate], cubes, goal: Formula,
                       decider=None) -> bool:
    """Every cube, conjoined with the negation of any CNF clause of the goal, is unsatisfiable."""
    decider = decider or _Decider(store)
    clauses = [negated_goal_facts(_clause_preds(cl)) for cl in to_cnf(goal)]
    for c in cubes:
        lits = [P[i] if pol else negate(P[i]) for i, pol in c]
        for N in clauses:
            if decider(lits + N) is not Verdict.UNSAT:
                return False
    return True


