"""Instance generators: random theory corpora and the structured families."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .logic import Atom, DifEdge, DifEq, DifNe, EufEq, TermStore, canonicalize
from .parser import Problem, parse_problem


@dataclass
class Instance:
    store: TermStore
    G: list
    E: list


def _vars(store, n, prefix="x"):
    return [store.var(f"{prefix}{i}") for i in range(1, n + 1)]


def random_euf_term(rng: random.Random, store: TermStore, variables, funcs, depth: int) -> int:
    if depth == 0 or rng.random() < 0.5:
        return rng.choice(variables)
    fn, arity = rng.choice(funcs)
    return store.app(fn, [random_euf_term(rng, store, variables, funcs, depth - 1) for _ in range(arity)])


def random_euf(rng: random.Random, *, n_vars: int = 4, size: int = 8, n_goal: int = 1,
               funcs=(("f", 1), ("g", 2)), depth: int = 1, p_eq: float = 0.75) -> Instance:
    store = TermStore()
    vs = _vars(store, n_vars)
    terms = list(vs)

    def atom(positive):
        while True:
            a = random_euf_term(rng, store, vs, funcs, depth) if rng.random() < 0.4 else rng.choice(terms)
            b = random_euf_term(rng, store, vs, funcs, depth) if rng.random() < 0.4 else rng.choice(terms)
            if a != b:
                terms.extend(t for t in (a, b) if t not in terms)
                return EufEq(a, b, positive)

    G = _distinct(lambda: atom(rng.random() < p_eq), size)
    E = _distinct(lambda: atom(rng.random() < 0.7), n_goal, avoid=G)
    return Instance(store, G, E)


def random_dif_pred(rng: random.Random, vs, zero, cmax: int, kinds=("edge", "edge", "edge", "eq", "ne")):
    a, b = rng.sample(vs + [zero], 2) if zero is not None and rng.random() < 0.25 else rng.sample(vs, 2)
    c = rng.randint(-cmax, cmax)
    kind = rng.choice(kinds)
    if kind == "edge":
        return DifEdge(a, b, rng.random() < 0.5, c)
    if kind == "eq":
        return DifEq(a, b, c)
    return DifNe(a, b, c)


def random_dif(rng: random.Random, *, n_vars: int = 4, size: int = 8, n_goal: int = 1,
               cmax: int = 3, constants: bool = True, kinds=None) -> Instance:
    store = TermStore()
    vs = _vars(store, n_vars)
    zero = store.zero if constants else None
    kinds = kinds or ("edge", "edge", "edge", "eq", "ne")
    G = _distinct(lambda: random_dif_pred(rng, vs, zero, cmax, kinds), size)
    E = _distinct(lambda: random_dif_pred(rng, vs, zero, cmax, kinds), n_goal, avoid=G)
    return Instance(store, G, E)


def random_mixed_pred(rng: random.Random, store: TermStore, vs, cmax: int = 2):
    def term(arith_ok=True):
        r = rng.random()
        if r < 0.55:
            return rng.choice(vs)
        if r < 0.85 or not arith_ok:
            return store.app("f", [rng.choice(vs)])
        return store.app("f", [store.shift(rng.choice(vs), rng.randint(-cmax, cmax) or 1)])

    while True:
        lhs, rhs = term(), term()
        op = rng.choice(["=", "=", "!=", "<=", "<", "<="])
        if op in ("<=", "<") or rng.random() < 0.3:
            rhs = store.shift(rhs, rng.randint(-cmax, cmax))
        if lhs == rhs:
            continue
        p = canonicalize(store, op, lhs, rhs)
        if p[1] != p[2]:
            return p


def random_mixed(rng: random.Random, *, n_vars: int = 3, size: int = 6, n_goal: int = 1,
                 cmax: int = 2) -> Instance:
    store = TermStore()
    vs = _vars(store, n_vars)
    G = _distinct(lambda: random_mixed_pred(rng, store, vs, cmax), size)
    E = _distinct(lambda: random_mixed_pred(rng, store, vs, cmax), n_goal, avoid=G)
    return Instance(store, G, E)


def _distinct(make, k, avoid=()):
    out = []
    tries = 0
    while len(out) < k and tries < 1000:
        tries += 1
        p = make()
        if p not in out and p not in avoid:
            out.append(p)
    return out


# --------------------------------------------------------------------------
# structured families


def near_complete(n: int) -> tuple[TermStore, list, list, list]:
    """Equalities between all pairs of ``x1..xn`` except ``x1 = xn``.

    Returns ``(store, G, E, chain)`` with ``E = [x1 = xn]`` and ``chain``
    the subset ``x1 = x2, ..., x(n-1) = xn``.
    """
    store = TermStore()
    xs = _vars(store, n)
    G = [EufEq(xs[i], xs[j]) for i in range(n) for j in range(i + 1, n) if (i, j) != (0, n - 1)]
    chain = [EufEq(xs[i], xs[i + 1]) for i in range(n - 1)]
    return store, G, [EufEq(xs[0], xs[-1])], chain


def eq_chain(n: int) -> tuple[TermStore, list]:
    """``x1 = x2, ..., x(n-1) = xn, x1 != xn``."""
    store = TermStore()
    xs = _vars(store, n)
    G = [EufEq(xs[i], xs[i + 1]) for i in range(n - 1)] + [EufEq(xs[0], xs[-1], False)]
    return store, G


def diamond_text(n: int) -> str:
    """Problem text for a chain of ``n`` diamonds.

    Diamond ``i`` joins ``a_i`` to ``d_i`` through ``b_i`` and through
    ``c_i``; ``d_i = a_(i+1)`` links consecutive diamonds.
    """
    if n < 1:
        raise ValueError("need at least one diamond")
    lines = ["(predicates"]
    for i in range(1, n + 1):
        lines.append(f"  (= a{i} b{i}) (= b{i} d{i}) (= a{i} c{i}) (= c{i} d{i})")
        if i < n:
            lines.append(f"  (= d{i} a{i + 1})")
    lines.append(")")
    lines.append(f"(goal (= a1 d{n}))")
    return "\n".join(lines) + "\n"


def gen_diamond(n: int) -> Problem:
    return parse_problem(diamond_text(n))


def problem_from_instance(inst: Instance) -> Problem:
    from .logic import Or
    goal = Or(tuple(Atom(e) for e in inst.E)) if inst.E else None
    return Problem(inst.store, list(inst.G), goal)
