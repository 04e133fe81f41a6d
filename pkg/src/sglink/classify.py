"""Equivalence decisions for pairs of two-component diagrams.

Two diagrams whose components have matching first-homology ranks are
related by the implemented move set exactly when their divisor-chain
invariants agree, so the decision reduces to comparing ranks and chains.
Rank mismatch already certifies inequivalence: every generating move
preserves component ranks.  The divisor chain is transpose invariant, so
trying the swapped component pairing costs nothing; handlebody mode shares
the decision procedure and merely relabels ranks as genera (a diagram read
as the spine of a handlebody pair).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .homology import rank
from .linking import diagram_invariant, require_two_components
from .sgd import Diagram
from .smith import LkInvariant

__all__ = ["Result", "Verdict", "classify", "handlebody_mode"]


class Result(Enum):
    EQUIVALENT = "equivalent"
    INEQUIVALENT = "inequivalent"
    # Reserved for forward compatibility; the decision procedure never
    # emits it, since rank mismatch already certifies inequivalence.
    HYPOTHESIS_VIOLATED = "hypothesis-violated"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a classification, with the evidence that produced it."""

    result: Result
    pairing: str  # "ordered" | "swapped" | "none"
    ranks: tuple[tuple[int, int], tuple[int, int]]
    invariants: tuple[LkInvariant, LkInvariant]
    obstruction: str | None  # "rank" | "divisors" | None

    def describe(self, handlebody: bool = False) -> str:
        label = "genus" if handlebody else "rank"
        (m, n), (m2, n2) = self.ranks
        a, b = self.invariants
        head = {
            Result.EQUIVALENT: f"Equivalent (pairing: {self.pairing})",
            Result.INEQUIVALENT: f"Inequivalent (obstruction: {self.obstruction})",
            Result.HYPOTHESIS_VIOLATED: "Hypothesis violated",
        }[self.result]
        return (
            f"{head}\n"
            f"  A: {label}s ({m}, {n}), invariant {a}\n"
            f"  B: {label}s ({m2}, {n2}), invariant {b}"
        )


@lru_cache(maxsize=1024)
def _profile(d: Diagram) -> tuple[tuple[int, int], LkInvariant]:
    """Ranks and invariant of a diagram; cached since diagrams are immutable."""
    require_two_components(d)
    return (rank(d, 1), rank(d, 2)), diagram_invariant(d)


def classify(d: Diagram, d2: Diagram, ordered: bool = False) -> Verdict:
    """Decide whether two diagrams are related by the implemented moves.

    With ``ordered`` the component pairing is fixed by the diagrams'
    deterministic component order; otherwise the swapped pairing is also
    admitted (the invariant is transpose invariant, so only the rank tuples
    need rechecking).  Equivalent means ranks match under some admitted
    pairing and the invariants are equal; otherwise the verdict reports the
    obstruction, "rank" or "divisors".
    """
    (m, n), inv = _profile(d)
    (m2, n2), inv2 = _profile(d2)
    pairings = [("ordered", (m2, n2))]
    if not ordered:
        pairings.append(("swapped", (n2, m2)))
    matched = [name for name, ranks2 in pairings if (m, n) == ranks2]
    ranks = ((m, n), (m2, n2))
    if not matched:
        return Verdict(Result.INEQUIVALENT, "none", ranks, (inv, inv2), "rank")
    if inv == inv2:
        return Verdict(Result.EQUIVALENT, matched[0], ranks, (inv, inv2), None)
    return Verdict(Result.INEQUIVALENT, "none", ranks, (inv, inv2), "divisors")


def handlebody_mode(d: Diagram, d2: Diagram) -> Verdict:
    """Classification of the diagrams read as spines of handlebody pairs.

    Identical decision procedure to unordered :func:`classify`; the genus
    of each handlebody is the rank of its spine component.
    """
    return classify(d, d2, ordered=False)
