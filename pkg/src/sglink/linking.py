"""Linking numbers of inter-component cycles and the linking matrix.

The linking number of cycles z and w in distinct components is the signed
count of crossings where a z-supported edge passes over a w-supported edge,
weighted bilinearly by the cycle coefficients.  On realizable diagrams this
equals the symmetric count with the roles reversed, which makes the
over/under comparison a cheap realizability smoke test.  Zero-rank
components yield 0 x n or m x 0 matrices, not errors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .homology import Cycle, CycleBasis, cycle_basis
from .sgd import Diagram
from .smith import IntMatrix, LkInvariant, lk_invariant

__all__ = [
    "LinkingMatrix",
    "linking_number",
    "linking_number_under",
    "linking_matrix",
    "over_under_consistent",
    "diagram_invariant",
]


@dataclass(frozen=True)
class LinkingMatrix:
    """Pairwise linking numbers of the two components' basis cycles."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]
    basis1: CycleBasis
    basis2: CycleBasis

    def to_int_matrix(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, self.entries)


def _check_cycle(d: Diagram, c: Cycle) -> None:
    comp = d.component(c.component)
    support = set(c.coeffs)
    if not support <= set(comp.edge_ids):
        stray = sorted(support - set(comp.edge_ids))
        raise DomainError(f"cycle support {stray} lies outside component {c.component}")


def _signed_count(d: Diagram, z: Cycle, w: Cycle, z_over: bool) -> int:
    if z.component == w.component:
        raise DomainError("cycles must lie in distinct components")
    _check_cycle(d, z)
    _check_cycle(d, w)
    total = 0
    for c in d.crossings:
        over_eid = c.over[0]
        under_eid = c.under[0]
        if z_over:
            a = z.coeffs.get(over_eid, 0)
            b = w.coeffs.get(under_eid, 0)
        else:
            a = z.coeffs.get(under_eid, 0)
            b = w.coeffs.get(over_eid, 0)
        if a and b:
            total += c.sign * a * b
    return total


def linking_number(d: Diagram, z: Cycle, w: Cycle) -> int:
    """Signed count of crossings where z passes over w.

    Sums sign(c) * z[e] * w[f] over crossings whose over strand lies on an
    edge e in z's component and whose under strand lies on an edge f in w's
    component.  Defined as the over-crossing count (not half the total), so
    it is integer valued on any combinatorial input.
    """
    return _signed_count(d, z, w, z_over=True)


def linking_number_under(d: Diagram, z: Cycle, w: Cycle) -> int:
    """Same count with z passing under w; equal to linking_number on
    realizable diagrams."""
    return _signed_count(d, z, w, z_over=False)


def require_two_components(d: Diagram) -> None:
    if len(d.components) != 2:
        raise DomainError(f"diagram has {len(d.components)} components, expected 2")


def linking_matrix(
    d: Diagram,
    basis1: CycleBasis | None = None,
    basis2: CycleBasis | None = None,
) -> LinkingMatrix:
    """Linking matrix over cycle bases of the two components.

    Defaults to the deterministic fundamental bases; explicit bases (for
    example over a randomized spanning tree) let callers confirm that the
    divisor chain does not depend on the choice.
    """
    require_two_components(d)
    if basis1 is None:
        basis1 = cycle_basis(d, 1)
    if basis2 is None:
        basis2 = cycle_basis(d, 2)
    if basis1.component != 1 or basis2.component != 2:
        raise DomainError("bases must belong to components 1 and 2 in that order")
    m, n = len(basis1.cycles), len(basis2.cycles)
    entries = [[0] * n for _ in range(m)]
    # One pass over the crossings; each inter-component crossing contributes
    # a rank-1 increment over the basis coefficient vectors of its two edges.
    for c in d.crossings:
        over_eid, under_eid = c.over[0], c.under[0]
        for i, z in enumerate(basis1.cycles):
            a = z.coeffs.get(over_eid, 0)
            if not a:
                continue
            row = entries[i]
            for j, w in enumerate(basis2.cycles):
                b = w.coeffs.get(under_eid, 0)
                if b:
                    row[j] += c.sign * a * b
    return LinkingMatrix(m, n, tuple(tuple(r) for r in entries), basis1, basis2)


def over_under_consistent(d: Diagram) -> bool:
    """True when over- and under-counts agree on every basis cycle pair.

    A necessary condition for realizability; canonical diagrams and
    everything the move engine produces satisfy it.
    """
    require_two_components(d)
    basis1 = cycle_basis(d, 1)
    basis2 = cycle_basis(d, 2)
    for z in basis1.cycles:
        for w in basis2.cycles:
            if linking_number(d, z, w) != linking_number_under(d, z, w):
                return False
    return True


def diagram_invariant(d: Diagram) -> LkInvariant:
    """Divisor-chain invariant of a two-component diagram."""
    return lk_invariant(linking_matrix(d).to_int_matrix())
