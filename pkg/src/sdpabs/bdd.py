"""A small reduced ordered BDD package.

Nodes are integers; ``0`` and ``1`` are the terminals.  Variable ``i`` sits
at level ``i`` of a manager: the order is fixed when the manager is created
and changed only by transferring functions into a manager with a
permutation (see :func:`sift`).
"""
from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .circuit import AND, LEAF, OR, TRUE_KIND
from .errors import CubeLimit, NodeLimit

FALSE_NODE, TRUE_NODE = 0, 1

DEFAULT_NODE_CAP = 10_000_000
DEFAULT_CUBE_CAP = 1 << 20

Cube = tuple  # sorted tuple of (var, polarity)


class BDD:
    def __init__(self, nvars: int = 0, node_cap: int = DEFAULT_NODE_CAP):
        self.nvars = nvars
        self.node_cap = node_cap
        big = 1 << 30
        self.var_of: list[int] = [big, big]
        self.lo: list[int] = [0, 1]
        self.hi: list[int] = [0, 1]
        self._unique: dict[tuple[int, int, int], int] = {}
        self._and: dict[tuple[int, int], int] = {}
        self._or: dict[tuple[int, int], int] = {}
        self._not: dict[int, int] = {}

    def __len__(self):
        return len(self.var_of)

    def add_var(self) -> int:
        self.nvars += 1
        return self.nvars - 1

    def mk(self, v: int, lo: int, hi: int) -> int:
        if lo == hi:
            return lo
        key = (v, lo, hi)
        u = self._unique.get(key)
        if u is None:
            u = len(self.var_of)
            if u >= self.node_cap:
                raise NodeLimit(f"BDD exceeds {self.node_cap} nodes")
            self._unique[key] = u
            self.var_of.append(v)
            self.lo.append(lo)
            self.hi.append(hi)
        return u

    def var(self, i: int) -> int:
        if i >= self.nvars:
            self.nvars = i + 1
        return self.mk(i, FALSE_NODE, TRUE_NODE)

    def nvar(self, i: int) -> int:
        if i >= self.nvars:
            self.nvars = i + 1
        return self.mk(i, TRUE_NODE, FALSE_NODE)

    # ------------------------------------------------------------------
    # operations

    def not_(self, u: int) -> int:
        if u <= 1:
            return 1 - u
        r = self._not.get(u)
        if r is None:
            r = self.mk(self.var_of[u], self.not_(self.lo[u]), self.not_(self.hi[u]))
            self._not[u] = r
        return r

    def and2(self, u: int, v: int) -> int:
        if u == 0 or v == 0:
            return 0
        if u == 1:
            return v
        if v == 1 or u == v:
            return u
        if v < u:
            u, v = v, u
        key = (u, v)
        r = self._and.get(key)
        if r is not None:
            return r
        vu, vv = self.var_of[u], self.var_of[v]
        if vu == vv:
            r = self.mk(vu, self.and2(self.lo[u], self.lo[v]), self.and2(self.hi[u], self.hi[v]))
        elif vu < vv:
            r = self.mk(vu, self.and2(self.lo[u], v), self.and2(self.hi[u], v))
        else:
            r = self.mk(vv, self.and2(u, self.lo[v]), self.and2(u, self.hi[v]))
        self._and[key] = r
        return r

    def or2(self, u: int, v: int) -> int:
        if u == 1 or v == 1:
            return 1
        if u == 0:
            return v
        if v == 0 or u == v:
            return u
        if v < u:
            u, v = v, u
        key = (u, v)
        r = self._or.get(key)
        if r is not None:
            return r
        vu, vv = self.var_of[u], self.var_of[v]
        if vu == vv:
            r = self.mk(vu, self.or2(self.lo[u], self.lo[v]), self.or2(self.hi[u], self.hi[v]))
        elif vu < vv:
            r = self.mk(vu, self.or2(self.lo[u], v), self.or2(self.hi[u], v))
        else:
            r = self.mk(vv, self.or2(u, self.lo[v]), self.or2(u, self.hi[v]))
        self._or[key] = r
        return r

    def conj(self, us: Iterable[int]) -> int:
        r = 1
        for u in us:
            r = self.and2(r, u)
            if r == 0:
                break
        return r

    def disj(self, us: Iterable[int]) -> int:
        r = 0
        for u in us:
            r = self.or2(r, u)
            if r == 1:
                break
        return r

    def implies(self, u: int, v: int) -> bool:
        return self.and2(u, self.not_(v)) == 0

    def restrict(self, u: int, var: int, value: bool) -> int:
        memo: dict[int, int] = {}

        def go(n):
            if n <= 1 or self.var_of[n] > var:
                return n
            r = memo.get(n)
            if r is None:
                if self.var_of[n] == var:
                    r = self.hi[n] if value else self.lo[n]
                else:
                    r = self.mk(self.var_of[n], go(self.lo[n]), go(self.hi[n]))
                memo[n] = r
            return r

        return go(u)

    def restrict_cube(self, u: int, cube: Cube) -> int:
        for v, pol in cube:
            u = self.restrict(u, v, pol)
        return u

    def exists(self, u: int, variables: Iterable[int]) -> int:
        vs = set(variables)
        memo: dict[int, int] = {}

        def go(n):
            if n <= 1:
                return n
            r = memo.get(n)
            if r is None:
                lo, hi = go(self.lo[n]), go(self.hi[n])
                r = self.or2(lo, hi) if self.var_of[n] in vs else self.mk(self.var_of[n], lo, hi)
                memo[n] = r
            return r

        return go(u)

    def eval(self, u: int, value: Callable[[int], bool] | Sequence[bool]) -> bool:
        if not callable(value):
            seq = value
            value = seq.__getitem__
        while u > 1:
            u = self.hi[u] if value(self.var_of[u]) else self.lo[u]
        return u == 1

    def count_minterms(self, u: int, n: int | None = None) -> int:
        """Satisfying assignments over variables ``0 .. n-1``."""
        n = self.nvars if n is None else n
        memo: dict[int, int] = {}

        def level(x):
            return n if x <= 1 else self.var_of[x]

        def go(x):
            if x <= 1:
                return x
            r = memo.get(x)
            if r is None:
                v = self.var_of[x]
                lo, hi = self.lo[x], self.hi[x]
                r = (go(lo) << (level(lo) - v - 1)) + (go(hi) << (level(hi) - v - 1))
                memo[x] = r
            return r

        return go(u) << level(u)

    def size(self, *roots: int) -> int:
        seen = set()
        stack = [r for r in roots if r > 1]
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            for c in (self.lo[x], self.hi[x]):
                if c > 1:
                    stack.append(c)
        return len(seen)

    def support(self, u: int) -> set[int]:
        out = set()
        seen = set()
        stack = [u]
        while stack:
            x = stack.pop()
            if x <= 1 or x in seen:
                continue
            seen.add(x)
            out.add(self.var_of[x])
            stack += [self.lo[x], self.hi[x]]
        return out

    def cube(self, cube: Cube) -> int:
        return self.conj(self.var(v) if pol else self.nvar(v) for v, pol in cube)

    def from_cubes(self, cubes: Iterable[Cube]) -> int:
        return self.disj(self.cube(c) for c in cubes)

    def audit(self) -> None:
        """Assert the reduction and ordering invariants of every node."""
        seen = set()
        for u in range(2, len(self.var_of)):
            v, lo, hi = self.var_of[u], self.lo[u], self.hi[u]
            assert lo != hi, f"redundant node {u}"
            assert self.var_of[lo] > v and self.var_of[hi] > v, f"order violated at {u}"
            assert (v, lo, hi) not in seen, f"duplicate node {u}"
            seen.add((v, lo, hi))

    # ------------------------------------------------------------------
    # prime implicants

    def prime_implicants(self, u: int, cap: int = DEFAULT_CUBE_CAP) -> list[Cube]:
        """All prime implicants of ``u`` as sorted ``(var, polarity)`` tuples.

        ``P(f) = P(f0 f1) + !x (P(f0) - P(f0 f1)) + x (P(f1) - P(f0 f1))``
        with ``f0, f1`` the cofactors on the top variable ``x``.
        """
        memo: dict[int, frozenset] = {0: frozenset(), 1: frozenset({()})}

        def go(n):
            r = memo.get(n)
            if r is not None:
                return r
            x, f0, f1 = self.var_of[n], self.lo[n], self.hi[n]
            both = go(self.and2(f0, f1))
            p0, p1 = go(f0), go(f1)
            neg = ((x, False),)
            pos = ((x, True),)
            out = set(both)
            out.update(neg + c for c in p0 if c not in both)
            out.update(pos + c for c in p1 if c not in both)
            if len(out) > cap:
                raise CubeLimit(f"more than {cap} prime implicants")
            r = frozenset(out)
            memo[n] = r
            return r

        return sorted(go(u), key=lambda c: (len(c), c))

    # ------------------------------------------------------------------
    # moving functions between managers

    def transfer(self, u: int, target: "BDD", var_map: Callable[[int], int] | Sequence[int]) -> int:
        """Rebuild ``u`` in ``target`` with variable ``v`` renamed ``var_map[v]``."""
        if not callable(var_map):
            table = var_map
            var_map = table.__getitem__
        memo: dict[int, int] = {0: 0, 1: 1}

        def go(n):
            r = memo.get(n)
            if r is None:
                v = target.var(var_map(self.var_of[n]))
                lo, hi = go(self.lo[n]), go(self.hi[n])
                r = target.or2(target.and2(v, hi), target.and2(target.not_(v), lo))
                memo[n] = r
            return r

        return go(u)


def bdd_equiv(m1: BDD, u1: int, m2: BDD | None = None, u2: int | None = None) -> bool:
    """Equivalence of two functions, possibly held by different managers
    with the same variable numbering."""
    if m2 is None or m2 is m1:
        return u1 == u2
    return m2.transfer(u2, m1, lambda v: v) == u1


def build_bdd(store, root, mgr: BDD, leaf: Callable[[object], int]) -> int:
    """BDD of a circuit; ``leaf(key)`` gives the BDD of each leaf."""
    if root is None:
        return FALSE_NODE
    memo: dict[int, int] = {}
    for n in store.reachable(root):
        k = store.kind[n]
        if k == TRUE_KIND:
            memo[n] = TRUE_NODE
        elif k == LEAF:
            memo[n] = leaf(store.data[n])
        elif k == AND:
            memo[n] = mgr.conj(memo[c] for c in store.data[n])
        elif k == OR:
            memo[n] = mgr.disj(memo[c] for c in store.data[n])
    return memo[root]


class BddAlgebra:
    """Adapter letting the saturation engine compute BDDs directly."""

    canonical = True

    def __init__(self, mgr: BDD):
        self.mgr = mgr

    def true(self):
        return TRUE_NODE

    def and_(self, children):
        r = TRUE_NODE
        for c in children:
            if c is None:
                return None
            r = self.mgr.and2(r, c)
            if r == FALSE_NODE:
                return None
        return r

    def or_(self, children):
        r = FALSE_NODE
        for c in children:
            if c is not None:
                r = self.mgr.or2(r, c)
        return None if r == FALSE_NODE else r

    def extend(self, prev, terms):
        return self.or_([prev, *terms])

    def leaf(self, key):
        raise TypeError("BDD seeds must be given explicitly")


def sift(mgr: BDD, roots: Sequence[int], nvars: int | None = None, max_passes: int = 1):
    """Greedy variable sifting by rebuilding.

    Returns ``(new_mgr, new_roots, order)`` where ``order[level]`` is the
    original variable placed at ``level``.
    """
    nvars = mgr.nvars if nvars is None else nvars
    order = list(range(nvars))

    def build(order_):
        pos = {v: i for i, v in enumerate(order_)}
        m = BDD(nvars, mgr.node_cap)
        rs = [mgr.transfer(r, m, pos.__getitem__) for r in roots]
        return m, rs

    best_m, best_rs = build(order)
    best = best_m.size(*best_rs)
    for _ in range(max_passes):
        improved = False
        for v in range(nvars):
            cur = order.index(v)
            for p in range(nvars):
                if p == cur:
                    continue
                cand = order[:cur] + order[cur + 1:]
                cand.insert(p, v)
                m, rs = build(cand)
                s = m.size(*rs)
                if s < best:
                    best, best_m, best_rs, order = s, m, rs, cand
                    cur = p
                    improved = True
        if not improved:
            break
    return best_m, best_rs, order
