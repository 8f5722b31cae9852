"""Hash-consed monotone AND/OR circuits over Boolean leaves."""
from __future__ import annotations

from typing import Callable, Hashable, Iterable

from .errors import UnknownLeaf

TRUE_KIND, LEAF, AND, OR = 0, 1, 2, 3

TRUE = 0


class CircuitStore:
    """Structural store of circuit nodes.

    A node reference is an ``int``.  Children of a node always have smaller
    references than the node itself, so increasing reference order is a
    topological order.  ``None`` stands for the absent (false) expression and
    is never stored.
    """

    canonical = False

    def __init__(self):
        self.kind: list[int] = [TRUE_KIND]
        self.data: list = [None]
        self._ids: dict[tuple, int] = {(TRUE_KIND, None): TRUE}

    def __len__(self):
        return len(self.kind)

    def _mk(self, kind, data) -> int:
        key = (kind, data)
        ref = self._ids.get(key)
        if ref is None:
            ref = len(self.kind)
            self._ids[key] = ref
            self.kind.append(kind)
            self.data.append(data)
        return ref

    def true(self) -> int:
        return TRUE

    def leaf(self, key: Hashable) -> int:
        return self._mk(LEAF, key)

    def and_(self, children: Iterable[int | None]) -> int | None:
        kids = set()
        for c in children:
            if c is None:
                return None
            if c != TRUE:
                kids.add(c)
        if not kids:
            return TRUE
        if len(kids) == 1:
            return kids.pop()
        return self._mk(AND, tuple(sorted(kids)))

    def or_(self, children: Iterable[int | None]) -> int | None:
        kids = set()
        for c in children:
            if c is None:
                continue
            if c == TRUE:
                return TRUE
            kids.add(c)
        if not kids:
            return None
        if len(kids) == 1:
            return kids.pop()
        return self._mk(OR, tuple(sorted(kids)))

    def extend(self, prev: int | None, terms: Iterable[int | None]) -> int | None:
        """``prev OR terms``, returning ``prev`` itself when nothing new is added.

        A term is not new if it is ``prev`` or already one of its disjuncts.
        """
        if prev == TRUE:
            return TRUE
        have = set()
        if prev is not None:
            have.add(prev)
            if self.kind[prev] == OR:
                have.update(self.data[prev])
        fresh = [t for t in terms if t is not None and t not in have]
        if not fresh:
            return prev
        return self.or_([prev, *fresh])

    # ------------------------------------------------------------------
    # inspection

    def reachable(self, root: int | None) -> list[int]:
        if root is None:
            return []
        seen = {root}
        stack = [root]
        while stack:
            n = stack.pop()
            if self.kind[n] in (AND, OR):
                for c in self.data[n]:
                    if c not in seen:
                        seen.add(c)
                        stack.append(c)
        return sorted(seen)

    def leaves(self, root: int | None) -> list:
        return [self.data[n] for n in self.reachable(root) if self.kind[n] == LEAF]

    def eval(self, root: int | None, value, *, strict_keys: Iterable | None = None) -> bool:
        """Evaluate with ``value(leaf_key) -> bool`` (or a set of true keys)."""
        if root is None:
            return False
        if isinstance(value, (set, frozenset)):
            chosen = value
            value = chosen.__contains__
        allowed = None if strict_keys is None else set(strict_keys)
        memo: dict[int, bool] = {}
        for n in self.reachable(root):
            k = self.kind[n]
            if k == TRUE_KIND:
                memo[n] = True
            elif k == LEAF:
                key = self.data[n]
                if allowed is not None and key not in allowed:
                    raise UnknownLeaf(f"leaf {key!r} is not an input predicate")
                memo[n] = bool(value(key))
            elif k == AND:
                memo[n] = all(memo[c] for c in self.data[n])
            else:
                memo[n] = any(memo[c] for c in self.data[n])
        return memo[root]

    def eval_masks(self, roots: Iterable[int | None], leaf_mask: Callable | dict, full: int) -> list[int]:
        """Bit-parallel evaluation.

        Bit ``k`` of the result is the value under assignment ``k``;
        ``leaf_mask(key)`` gives the bit pattern of each leaf and ``full`` the
        all-ones pattern.
        """
        roots = list(roots)
        if isinstance(leaf_mask, dict):
            table = leaf_mask
            leaf_mask = table.__getitem__
        nodes = set()
        for r in roots:
            nodes.update(self.reachable(r))
        memo: dict[int, int] = {}
        for n in sorted(nodes):
            k = self.kind[n]
            if k == TRUE_KIND:
                memo[n] = full
            elif k == LEAF:
                memo[n] = leaf_mask(self.data[n])
            elif k == AND:
                v = full
                for c in self.data[n]:
                    v &= memo[c]
                memo[n] = v
            else:
                v = 0
                for c in self.data[n]:
                    v |= memo[c]
                memo[n] = v
        return [0 if r is None else memo[r] for r in roots]

    def stats(self, root: int | None) -> dict:
        nodes = self.reachable(root)
        depth: dict[int, int] = {}
        for n in nodes:
            if self.kind[n] in (AND, OR):
                depth[n] = 1 + max(depth[c] for c in self.data[n])
            else:
                depth[n] = 0
        return {
            "node_count": len(nodes),
            "depth": depth[root] if root is not None else 0,
            "leaf_count": sum(1 for n in nodes if self.kind[n] == LEAF),
        }

    def substitute(self, root: int | None, mapping: Callable | dict, memo: dict | None = None) -> int | None:
        """Rewrite leaves; ``mapping(key)`` returns a reference or ``None``."""
        if root is None:
            return None
        if isinstance(mapping, dict):
            table = mapping
            mapping = lambda key: table.get(key, self.leaf(key))  # noqa: E731
        memo = {} if memo is None else memo
        for n in self.reachable(root):
            if n in memo:
                continue
            k = self.kind[n]
            if k == TRUE_KIND:
                memo[n] = TRUE
            elif k == LEAF:
                memo[n] = mapping(self.data[n])
            elif k == AND:
                memo[n] = self.and_(memo[c] for c in self.data[n])
            else:
                memo[n] = self.or_(memo[c] for c in self.data[n])
        return memo[root]

    def to_dot(self, roots, label: Callable | None = None) -> str:
        """DOT text; ``roots`` is one reference or a list of them."""
        label = label or repr
        if roots is None or isinstance(roots, int):
            roots = [roots]
        nodes = set()
        for r in roots:
            nodes.update(self.reachable(r))
        lines = ["digraph circuit {", "  rankdir=BT;"]
        for n in sorted(nodes):
            k = self.kind[n]
            if k == TRUE_KIND:
                lines.append(f'  n{n} [label="true", shape=box];')
            elif k == LEAF:
                text = str(label(self.data[n])).replace('"', '\\"')
                lines.append(f'  n{n} [label="{text}", shape=box];')
            elif k == AND:
                lines.append(f'  n{n} [label="", shape=diamond];')
            else:
                lines.append(f'  n{n} [label="or", shape=circle];')
            if k in (AND, OR):
                for c in self.data[n]:
                    lines.append(f"  n{c} -> n{n};")
        for i, r in enumerate(roots):
            lines.append(f'  root{i} [label="goal {i + 1}", shape=plaintext];')
            lines.append(f"  {'n%d' % r if r is not None else 'absent%d' % i} -> root{i};")
            if r is None:
                lines.append(f'  absent{i} [label="false", shape=box];')
        lines.append("}")
        return "\n".join(lines) + "\n"
