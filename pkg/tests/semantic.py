"""Decision by reduction to pure difference constraints.

Each application ``f(t)`` becomes a fresh rational; functional consistency
between two applications of the same symbol is enforced by splitting on
the order of their arguments.  Each resulting conjunction is decided by the
shortest-path check, which shares no code with the saturation engines.
"""
import itertools

from sdpabs.dif import negative_cycle_oracle
from sdpabs.logic import APP, SHIFT, DifEdge, DifEq, DifNe
from sdpabs.saturation import Verdict


def _linear(store, t, apps):
    """``(variable, offset)`` for a term, registering applications."""
    k = store.kind[t]
    if k == SHIFT:
        base, c = store.split_offset(t)
        v, c0 = _linear(store, base, apps)
        return v, c0 + c
    if k == APP:
        if t not in apps:
            assert len(store.args[t]) == 1, "unary symbols only"
            arg = _linear(store, store.args[t][0], apps)
            apps[t] = (store.head[t], arg, store.var(f"_app{t}"))
        return apps[t][2], 0
    return t, 0


def semantic_verdict(store, preds) -> Verdict:
    apps = {}
    base = []
    for p in preds:
        a, ca = _linear(store, p[1], apps)
        b, cb = _linear(store, p[2], apps)
        if p[0] == 0:
            base.append(DifEq(a, b, cb - ca) if p[3] else DifNe(a, b, cb - ca))
        elif p[0] == 1:
            base.append(DifEdge(a, b, p[3], p[4] + cb - ca))
        elif p[0] == 3:
            base.append(DifEq(a, b, p[3] + cb - ca))
        else:
            base.append(DifNe(a, b, p[3] + cb - ca))
    pairs = [(s, t) for s, t in itertools.combinations(apps.values(), 2) if s[0] == t[0]]
    for choice in itertools.product(range(3), repeat=len(pairs)):
        extra = []
        for (s, t), k in zip(pairs, choice):
            (x, cx), (y, cy) = s[1], t[1]
            if k == 0:      # equal arguments, equal values
                extra += [DifEq(x, y, cy - cx), DifEq(s[2], t[2], 0)]
            elif k == 1:    # x + cx < y + cy
                extra.append(DifEdge(x, y, True, cy - cx))
            else:
                extra.append(DifEdge(y, x, True, cx - cy))
        if negative_cycle_oracle(base + extra) is Verdict.SAT:
            return Verdict.SAT
    return Verdict.UNSAT
