"""Equality with uninterpreted functions."""
from __future__ import annotations

from collections import defaultdict
from itertools import combinations

from .logic import APP, VAR, EufEq, TermStore, terms_of
from .saturation import Derivation, Theory, Verdict

_EQ = 0


class EufTheory(Theory):
    """Transitivity and congruence over a fixed term universe.

    Symmetry is implicit in the canonical ordering of :class:`EufEq`.
    Congruence conclusions are limited to application terms of the universe,
    otherwise saturation would not terminate.
    """

    name = "euf"

    def __init__(self, store: TermStore, universe=None):
        self.store = store
        self.universe = None
        self._app_pairs: list[tuple[int, int]] = []
        if universe is not None:
            self.bound = True
            self.universe = frozenset(universe)
            groups = defaultdict(list)
            for t in sorted(self.universe):
                if store.kind[t] == APP:
                    groups[(store.head[t], len(store.args[t]))].append(t)
            self._app_pairs = [p for g in groups.values() for p in combinations(g, 2)]

    def bind(self, facts):
        if self.bound:
            return self
        return EufTheory(self.store, terms_of(self.store, facts))

    def owns(self, fact):
        return fact[0] == _EQ

    def depth_bound(self, facts):
        return 3 * len(terms_of(self.store, facts))

    def infer(self, W, focus=None):
        adj: dict[int, dict[int, EufEq]] = defaultdict(dict)
        for f in W:
            if f[0] == _EQ and f[3] and f[1] != f[2]:
                adj[f[1]][f[2]] = f
                adj[f[2]][f[1]] = f
        out = []
        if focus is None:
            for y, nbrs in adj.items():
                items = list(nbrs.items())
                for i, (x, fx) in enumerate(items):
                    for z, fz in items[i + 1:]:
                        out.append(Derivation(EufEq(x, z), (fx, fz)))
        else:
            for f in focus:
                if f[0] != _EQ or not f[3] or f[1] == f[2]:
                    continue
                for y, other in ((f[1], f[2]), (f[2], f[1])):
                    for z, fz in adj[y].items():
                        if z != other:
                            out.append(Derivation(EufEq(other, z), (f, fz)))
        args = self.store.args
        for s, t in self._app_pairs:
            ants = []
            for a, b in zip(args[s], args[t]):
                if a == b:
                    continue
                g = adj[a].get(b)
                if g is None:
                    break
                ants.append(g)
            else:
                if focus is None or any(g in focus for g in ants):
                    out.append(Derivation(EufEq(s, t), tuple(ants)))
        return out

    def contradictions(self, W):
        out = []
        for f in W:
            if f[0] == _EQ and not f[3]:
                if f[1] == f[2]:
                    out.append((f,))
                else:
                    pos = EufEq(f[1], f[2], True)
                    if pos in W:
                        out.append((pos, f))
        out.sort()
        return out

    def shared_equalities(self, W):
        kind = self.store.kind
        for f in W:
            if f[0] == _EQ and f[3] and f[1] != f[2] and kind[f[1]] == VAR and kind[f[2]] == VAR:
                yield Derivation(f, (f,))

    def encode_equality(self, eq):
        return (eq,)


def euf_depth_bound(store: TermStore, G) -> int:
    return 3 * len(terms_of(store, G))


class UnionFind:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        p = self.parent
        p.setdefault(x, x)
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def congruence_closure_oracle(store: TermStore, G) -> Verdict:
    """Classic congruence closure: merge, then re-check congruent pairs."""
    G = list(G)
    terms = sorted(terms_of(store, G))
    uf = UnionFind()
    for t in terms:
        uf.find(t)
    apps = [t for t in terms if store.kind[t] == APP]
    parents = defaultdict(list)
    for t in apps:
        for a in store.args[t]:
            parents[a].append(t)

    def merge(a, b):
        pending = [(a, b)]
        while pending:
            a, b = pending.pop()
            ra, rb = uf.find(a), uf.find(b)
            if ra == rb:
                continue
            # congruence candidates: applications over either class
            users_a = [u for t in terms if uf.find(t) == ra for u in parents[t]]
            users_b = [u for t in terms if uf.find(t) == rb for u in parents[t]]
            uf.union(ra, rb)
            for s in users_a:
                for t in users_b:
                    if (store.head[s] == store.head[t] and len(store.args[s]) == len(store.args[t])
                            and all(uf.find(x) == uf.find(y) for x, y in zip(store.args[s], store.args[t]))):
                        pending.append((s, t))

    for f in G:
        if f[0] == _EQ and f[3]:
            merge(f[1], f[2])
    for f in G:
        if f[0] == _EQ and not f[3] and uf.find(f[1]) == uf.find(f[2]):
            return Verdict.UNSAT
    return Verdict.SAT
