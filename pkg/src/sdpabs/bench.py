"""Benchmark drivers shared by the CLI and the test-suite."""
from __future__ import annotations

import random
import time

from .gen import gen_diamond, random_mixed
from .logic import Atom, Or
from .predabs import abstract_formula, brute_force_Fp


def diamond_rows(max_n: int, min_n: int = 1) -> list[dict]:
    rows = []
    for n in range(min_n, max_n + 1):
        prob = gen_diamond(n)
        t0 = time.perf_counter()
        res = abstract_formula(prob.store, prob.predicates, prob.goal)
        dt = time.perf_counter() - t0
        rows.append({
            "n": n,
            "predicates": len(prob.predicates),
            "primes": len(res.cubes),
            "expected": 2 ** n,
            "seconds": dt,
        })
    return rows


def mixed_rows(count: int = 20, seed: int = 0, size: int = 7) -> list[dict]:
    """Symbolic abstraction against minterm enumeration on random mixed queries."""
    rng = random.Random(seed)
    rows = []
    for k in range(count):
        inst = random_mixed(rng, n_vars=3, size=size, n_goal=2)
        goal = Or(tuple(Atom(e) for e in inst.E))
        t0 = time.perf_counter()
        res = abstract_formula(inst.store, inst.G, goal)
        t1 = time.perf_counter()
        brute = brute_force_Fp(inst.store, inst.G, goal)
        t2 = time.perf_counter()
        rows.append({
            "query": k,
            "predicates": len(inst.G),
            "primes": len(res.cubes),
            "minterms": len(brute),
            "symbolic_ms": (t1 - t0) * 1000,
            "enumerate_ms": (t2 - t1) * 1000,
        })
    return rows


def format_table(rows: list[dict], sep: str = "\t") -> str:
    if not rows:
        return ""
    cols = list(rows[0])
    out = [sep.join(cols)]
    for r in rows:
        out.append(sep.join(f"{r[c]:.4f}" if isinstance(r[c], float) else str(r[c]) for c in cols))
    return "\n".join(out) + "\n"
