"""Spanning trees and fundamental cycle bases of diagram components.

First homology of a connected graph is free abelian of rank E - V + 1, and
a basis is given by the fundamental cycles of any spanning tree: one cycle
per non-tree edge, consisting of that edge plus the unique tree path
closing it up.  Cycles are integer coefficient vectors over the edges of
one component, with the boundary-zero property checkable vertex by vertex.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import DomainError
from .sgd import Diagram

__all__ = [
    "Cycle",
    "CycleBasis",
    "spanning_tree",
    "random_spanning_tree",
    "cycle_basis",
    "rank",
    "boundary",
]


@dataclass(frozen=True)
class Cycle:
    """Integer 1-cycle supported on the edges of one component.

    ``coeffs`` maps edge id to a nonzero integer coefficient; absent means 0.
    """

    component: int
    coeffs: Mapping[str, int]

    def coeff(self, eid: str) -> int:
        return self.coeffs.get(eid, 0)

    def negated(self) -> "Cycle":
        return Cycle(self.component, {e: -c for e, c in self.coeffs.items()})


@dataclass(frozen=True)
class CycleBasis:
    """Fundamental cycles of a spanning tree, one per non-tree edge.

    Cycle k has coefficient +1 on its defining non-tree edge and 0 on the
    other non-tree edges, so the basis matrix restricted to non-tree edges
    is the identity.
    """

    component: int
    tree_edges: tuple[str, ...]
    cycles: tuple[Cycle, ...]


def _adjacency(d: Diagram, edge_ids) -> dict[str, list[tuple[str, str]]]:
    adj: dict[str, list[tuple[str, str]]] = {}
    for eid in edge_ids:
        e = d.edge_map[eid]
        if e.tail == e.head:
            continue  # loops never join distinct vertices
        adj.setdefault(e.tail, []).append((eid, e.head))
        adj.setdefault(e.head, []).append((eid, e.tail))
    for nbrs in adj.values():
        nbrs.sort()
    return adj


def spanning_tree(d: Diagram, component: int) -> list[str]:
    """Deterministic spanning tree of one component, as an edge-id list.

    Breadth-first from the smallest vertex id, neighbors explored in
    ascending edge-id order; loops are never tree edges.  Edge ids are
    returned in discovery order.
    """
    comp = d.component(component)
    adj = _adjacency(d, comp.edge_ids)
    root = comp.vertices[0]
    seen = {root}
    queue = deque([root])
    tree: list[str] = []
    while queue:
        v = queue.popleft()
        for eid, other in adj.get(v, ()):
            if other not in seen:
                seen.add(other)
                tree.append(eid)
                queue.append(other)
    return tree


def random_spanning_tree(d: Diagram, component: int, rng: random.Random) -> list[str]:
    """Uniformly shuffled Kruskal tree; for basis-independence testing."""
    comp = d.component(component)
    edges = [eid for eid in comp.edge_ids if d.edge_map[eid].tail != d.edge_map[eid].head]
    rng.shuffle(edges)
    parent = {v: v for v in comp.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    tree = []
    for eid in edges:
        e = d.edge_map[eid]
        a, b = find(e.tail), find(e.head)
        if a != b:
            parent[a] = b
            tree.append(eid)
    return tree


def _tree_path(d: Diagram, tree_adj, start: str, goal: str) -> list[tuple[str, str]]:
    """Unique tree path as (edge id, from-vertex) steps from start to goal."""
    if start == goal:
        return []
    prev: dict[str, tuple[str, str]] = {}
    queue = deque([start])
    seen = {start}
    while queue:
        v = queue.popleft()
        for eid, other in tree_adj.get(v, ()):
            if other not in seen:
                seen.add(other)
                prev[other] = (eid, v)
                if other == goal:
                    queue.clear()
                    break
                queue.append(other)
    steps = []
    v = goal
    while v != start:
        eid, u = prev[v]
        steps.append((eid, u))
        v = u
    steps.reverse()
    return steps


def cycle_basis(d: Diagram, component: int, tree: Sequence[str] | None = None) -> CycleBasis:
    """Fundamental cycle basis of one component.

    One cycle per non-tree edge in ascending edge-id order: the edge itself
    with coefficient +1 (traversed tail to head) plus the unique tree path
    from its head back to its tail, tree edges signed by traversal
    direction.  ``tree`` overrides the deterministic spanning tree; it must
    be a spanning tree of the same component.
    """
    comp = d.component(component)
    if tree is None:
        tree = spanning_tree(d, component)
    tree_set = set(tree)
    if len(tree_set) != len(tree) or not tree_set <= set(comp.edge_ids):
        raise DomainError("tree edges must be distinct edges of the component")
    if len(tree) != len(comp.vertices) - 1:
        raise DomainError("not a spanning tree: wrong edge count")
    tree_adj = _adjacency(d, tree)

    cycles = []
    for eid in comp.edge_ids:
        if eid in tree_set:
            continue
        e = d.edge_map[eid]
        coeffs = {eid: 1}
        for tid, from_v in _tree_path(d, tree_adj, e.head, e.tail):
            t = d.edge_map[tid]
            coeffs[tid] = 1 if t.tail == from_v else -1
        cycles.append(Cycle(component, coeffs))
    return CycleBasis(component, tuple(tree), tuple(cycles))


def rank(d: Diagram, component: int) -> int:
    """First-homology rank of one component: E - V + 1."""
    comp = d.component(component)
    return len(comp.edge_ids) - len(comp.vertices) + 1


def boundary(d: Diagram, cycle: Cycle) -> dict[str, int]:
    """Signed incidence sum at every vertex; all zero for a genuine cycle.

    Incidence of an edge at a vertex is +1 at its head plus -1 at its tail,
    so loops contribute nothing.
    """
    sums: dict[str, int] = {}
    for eid, coeff in cycle.coeffs.items():
        e = d.edge_map[eid]
        sums[e.head] = sums.get(e.head, 0) + coeff
        sums[e.tail] = sums.get(e.tail, 0) - coeff
    return {v: s for v, s in sums.items() if s != 0}
