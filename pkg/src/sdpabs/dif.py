"""Difference logic over the rationals: ``x < y + c`` and ``x <= y + c``."""
from __future__ import annotations

import math
from collections import defaultdict

from .logic import DifEdge, EufEq, facts, number
from .saturation import Derivation, Theory, Verdict

_EQ, _EDGE, _NE, _DEQ = 0, 1, 2, 3


def dif_facts(preds):
    """Expand equalities into their edge pairs; keep edges and disequalities."""
    out = []
    for p in preds:
        if p[0] != _EQ:
            out.extend(facts(p))
    return out


def dif_variables(preds) -> set[int]:
    out = set()
    for p in preds:
        if p[0] != _EQ:
            out.add(p[1])
            out.add(p[2])
    return out


def _const(p):
    return p[4] if p[0] == _EDGE else p[3]


def dif_bounds(preds) -> tuple[int, object, object]:
    """``(m, c_max, C)`` for a fact set.  Derived edges with ``|c| > C`` are useless."""
    preds = dif_facts(preds)
    m = len(dif_variables(preds))
    consts = [abs(_const(p)) for p in preds]
    c_max = max(consts, default=0)
    C = number(min((m - 1) * c_max, sum(consts))) if m else 0
    return m, c_max, C


def dif_depth_bound(preds) -> int:
    m = len(dif_variables(dif_facts(preds)))
    return max(1, math.ceil(math.log2(m))) if m > 1 else 1


class DifTheory(Theory):
    """Edge composition with constant pruning.

    Besides the edge rules, ``a <= b + c``, ``b <= a - c`` and ``a != b + c``
    together are contradictory, which makes disequalities exact over the
    rationals.  Self-loop conclusions are never produced; a cycle is caught
    as a pair of opposite edges one step earlier.
    """

    name = "dif"

    def __init__(self, cap=None):
        self.cap = cap
        self.bound = cap is not None

    def bind(self, facts_):
        if self.bound:
            return self
        return DifTheory(dif_bounds(facts_)[2])

    def owns(self, fact):
        return fact[0] != _EQ

    def depth_bound(self, facts_):
        return dif_depth_bound(facts_)

    def infer(self, W, focus=None):
        cap = self.cap
        out_edges = defaultdict(list)
        in_edges = defaultdict(list)
        for f in W:
            if f[0] == _EDGE:
                out_edges[f[1]].append(f)
                in_edges[f[2]].append(f)
        res = []
        if focus is None:
            for f in W:
                if f[0] != _EDGE:
                    continue
                x, z, s, c = f[1], f[2], f[3], f[4]
                for g in out_edges[z]:
                    y = g[2]
                    if y == x:
                        continue
                    d = c + g[4]
                    if -cap <= d <= cap:
                        res.append(Derivation(DifEdge(x, y, s or g[3], d), (f, g)))
            return res
        for f in focus:
            if f[0] != _EDGE:
                continue
            x, z, s, c = f[1], f[2], f[3], f[4]
            for g in out_edges[z]:
                y = g[2]
                if y == x:
                    continue
                d = c + g[4]
                if -cap <= d <= cap:
                    res.append(Derivation(DifEdge(x, y, s or g[3], d), (f, g)))
            for g in in_edges[x]:
                v = g[1]
                if v == z or g in focus:
                    continue
                d = g[4] + c
                if -cap <= d <= cap:
                    res.append(Derivation(DifEdge(v, z, g[3] or s, d), (g, f)))
        return res

    def contradictions(self, W):
        by_pair = defaultdict(list)
        for f in W:
            if f[0] == _EDGE:
                by_pair[f[1], f[2]].append(f)
        out = []
        for (x, y), fs in by_pair.items():
            if x == y:
                out.extend((f,) for f in fs if f[4] < 0 or (f[3] and f[4] <= 0))
                continue
            if x > y:
                continue
            for g in by_pair.get((y, x), ()):
                for f in fs:
                    t = f[4] + g[4]
                    if t < 0 or (t == 0 and (f[3] or g[3])):
                        out.append((f, g))
        for f in W:
            if f[0] == _NE:
                a, b, c = f[1], f[2], f[3]
                if a == b:
                    if c == 0:
                        out.append((f,))
                    continue
                e1 = DifEdge(a, b, False, c)
                e2 = DifEdge(b, a, False, -c)
                if e1 in W and e2 in W:
                    out.append((e1, e2, f))
        out.sort()
        return out

    def shared_equalities(self, W):
        for f in W:
            if f[0] == _EDGE and not f[3] and f[4] == 0 and f[1] < f[2]:
                back = DifEdge(f[2], f[1], False, 0)
                if back in W:
                    yield Derivation(EufEq(f[1], f[2]), (f, back))

    def encode_equality(self, eq):
        return DifEdge(eq[1], eq[2], False, 0), DifEdge(eq[2], eq[1], False, 0)


# --------------------------------------------------------------------------
# oracle

def _add(u, v):
    return (u[0] + v[0], u[1] + v[1])


def shortest_paths(preds):
    """All-pairs tightest bounds.

    ``D[(u, v)]`` is the least ``(c, -k)`` such that the edges entail
    ``v - u <= c`` (strictly when ``k > 0``), taken lexicographically; ``k``
    counts strict edges, so ``(c, -k)`` behaves like ``c - k*eps``.
    """
    preds = dif_facts(preds)
    nodes = sorted(dif_variables(preds))
    D = {}
    for p in preds:
        if p[0] != _EDGE:
            continue
        # src <= dst + c  :  src - dst <= c  -> path dst -> src
        key = (p[2], p[1])
        w = (p[4], -1 if p[3] else 0)
        if key not in D or w < D[key]:
            D[key] = w
    for v in nodes:
        D[v, v] = min(D.get((v, v), (0, 0)), (0, 0))
    for k in nodes:
        for i in nodes:
            dik = D.get((i, k))
            if dik is None:
                continue
            for j in nodes:
                dkj = D.get((k, j))
                if dkj is None:
                    continue
                w = _add(dik, dkj)
                if (i, j) not in D or w < D[i, j]:
                    D[i, j] = w
    return nodes, D


def negative_cycle_oracle(G) -> Verdict:
    """Floyd-Warshall with strictness; disequalities checked against implied equalities."""
    nodes, D = shortest_paths(G)
    if any(D[v, v] < (0, 0) for v in nodes):
        return Verdict.UNSAT
    for p in dif_facts(G):
        if p[0] != _NE:
            continue
        a, b, c = p[1], p[2], p[3]
        if a == b:
            if c == 0:
                return Verdict.UNSAT
            continue
        # a - b <= c via path b -> a, b - a <= -c via path a -> b
        if D.get((b, a)) == (c, 0) and D.get((a, b)) == (-c, 0):
            return Verdict.UNSAT
    return Verdict.SAT
