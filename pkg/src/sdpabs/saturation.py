"""Bounded saturation decision procedure and the theory plugin contract."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Collection, Iterable, Iterator, NamedTuple

from .logic import Predicate, facts


class Verdict(enum.Enum):
    SAT = "sat"
    UNSAT = "unsat"

    def __str__(self):
        return self.value


class Derivation(NamedTuple):
    conclusion: Predicate
    antecedents: tuple


class Theory:
    """A saturation theory.

    Subclasses implement the inference rules.  A plugin is first *bound* to
    an input fact set, which fixes whatever the rules need to know globally
    (the term universe for EUF, the constant cap for DIF).  Binding an
    already bound plugin returns it unchanged, so a caller can share one
    bound plugin between several runs.
    """

    name = "?"
    bound = False

    def bind(self, facts: Collection[Predicate]) -> "Theory":
        raise NotImplementedError

    def infer(self, W: Collection[Predicate], focus: Collection[Predicate] | None = None
              ) -> Iterator[Derivation]:
        """All one-step derivations from ``W``.

        With ``focus`` only derivations using at least one fact of ``focus``
        are required (others may still be produced).
        """
        raise NotImplementedError

    def contradictions(self, W: Collection[Predicate]) -> list[tuple]:
        raise NotImplementedError

    def depth_bound(self, facts: Collection[Predicate]) -> int:
        raise NotImplementedError

    def shared_equalities(self, W: Collection[Predicate]) -> Iterator[Derivation]:
        """Variable equalities implied by ``W``, as derivations."""
        raise NotImplementedError

    def encode_equality(self, eq: Predicate) -> tuple[Predicate, ...]:
        """Facts of this theory standing for a shared variable equality."""
        raise NotImplementedError

    def owns(self, fact: Predicate) -> bool:
        raise NotImplementedError


@dataclass
class DpResult:
    verdict: Verdict
    facts: frozenset
    iterations: int
    conflicts: list = field(default_factory=list)
    trace: list | None = None

    @property
    def unsat(self) -> bool:
        return self.verdict is Verdict.UNSAT


def dp_check(theory: Theory, G: Iterable[Predicate], *, iterations: int | None = None,
             trace: bool = False) -> DpResult:
    """Saturate ``G`` for ``depth_bound(G)`` rounds, then look for a contradiction.

    Each round only joins facts that appeared in the previous round (the
    older combinations were already tried), so rounds after the fixpoint
    cost nothing; the round count itself is always the full bound.
    """
    G = frozenset(f for p in G for f in facts(p))
    th = theory.bind(G)
    d = th.depth_bound(G) if iterations is None else iterations
    W = set(G)
    focus = set(G)
    snaps = [] if trace else None
    for _ in range(d):
        if focus:
            new = {c for c, _ants in th.infer(W, focus) if c not in W}
            W |= new
            focus = new
        if trace:
            snaps.append(frozenset(W))
    conflicts = th.contradictions(W)
    verdict = Verdict.UNSAT if conflicts else Verdict.SAT
    return DpResult(verdict, frozenset(W), d, conflicts, snaps)


def dp_trace(theory: Theory, G: Iterable[Predicate], *, iterations: int | None = None) -> list[frozenset]:
    """``W`` after every saturation round."""
    return dp_check(theory, G, iterations=iterations, trace=True).trace
