"""Linking numbers, the linking matrix, and the over/under smoke test."""

import random

import pytest

from gen import random_canonical
from sglink import (
    Cycle,
    DomainError,
    LkInvariant,
    canonical_diagram,
    cycle_basis,
    diagram_invariant,
    linking_matrix,
    linking_number,
    linking_number_under,
    over_under_consistent,
    parse_sgd,
)
from sglink.homology import random_spanning_tree
from sglink.smith import lk_invariant

HOPF = parse_sgd(
    "sgd 1\nvertex v1\nvertex v2\nedge e1 v1 v1\nedge e2 v2 v2\n"
    "crossing x1 over e1 0 under e2 0 sign +\n"
    "crossing x2 over e2 1 under e1 1 sign +\n"
)

Z = Cycle(1, {"e1": 1})
W = Cycle(2, {"e2": 1})


class TestLinkingNumber:
    def test_hopf_is_one(self):
        assert linking_number(HOPF, Z, W) == 1

    def test_hopf_under_count_agrees(self):
        assert linking_number_under(HOPF, Z, W) == 1

    def test_zero_cycle(self):
        assert linking_number(HOPF, Cycle(1, {}), W) == 0

    def test_negation(self):
        assert linking_number(HOPF, Z.negated(), W) == -1
        assert linking_number(HOPF, Z, W.negated()) == -1

    def test_bilinearity(self):
        rng = random.Random(21)
        for _ in range(25):
            d = random_canonical(rng, walk_steps=10)
            b1, b2 = cycle_basis(d, 1), cycle_basis(d, 2)
            if not b1.cycles or not b2.cycles:
                continue
            z1, z2 = rng.choice(b1.cycles), rng.choice(b1.cycles)
            w = rng.choice(b2.cycles)
            total = {}
            for e, c in list(z1.coeffs.items()) + list(z2.coeffs.items()):
                total[e] = total.get(e, 0) + c
            z_sum = Cycle(1, {e: c for e, c in total.items() if c})
            assert linking_number(d, z_sum, w) == linking_number(d, z1, w) + linking_number(d, z2, w)

    def test_same_component_rejected(self):
        with pytest.raises(DomainError):
            linking_number(HOPF, Z, Cycle(1, {"e1": 1}))

    def test_support_outside_component_rejected(self):
        with pytest.raises(DomainError):
            linking_number(HOPF, Cycle(1, {"e2": 1}), W)


class TestLinkingMatrix:
    def test_hopf(self):
        m = linking_matrix(HOPF)
        assert m.entries == ((1,),)

    def test_split_is_zero(self):
        m = linking_matrix(canonical_diagram(2, 2, ()))
        assert m.entries == ((0, 0), (0, 0))

    def test_canonical_diagonal(self):
        assert linking_matrix(canonical_diagram(2, 2, (1, 6))).entries == ((1, 0), (0, 6))

    def test_zero_rank_component(self):
        m = linking_matrix(canonical_diagram(0, 2, ()))
        assert (m.rows, m.cols) == (0, 2)
        assert diagram_invariant(canonical_diagram(0, 2, ())) == LkInvariant.zero()

    def test_component_count_enforced(self):
        with pytest.raises(DomainError):
            linking_matrix(parse_sgd("sgd 1\nvertex a\n"))
        with pytest.raises(DomainError):
            linking_matrix(parse_sgd("sgd 1\nvertex a\nvertex b\nvertex c\n"))

    def test_basis_independence_of_divisors(self):
        rng = random.Random(22)
        for _ in range(25):
            d = random_canonical(rng, walk_steps=8)
            expect = diagram_invariant(d)
            b1 = cycle_basis(d, 1, tree=random_spanning_tree(d, 1, rng))
            b2 = cycle_basis(d, 2, tree=random_spanning_tree(d, 2, rng))
            assert lk_invariant(linking_matrix(d, b1, b2).to_int_matrix()) == expect


class TestOverUnder:
    def test_realizable_examples(self):
        assert over_under_consistent(HOPF)
        assert over_under_consistent(canonical_diagram(3, 2, (2, 4)))

    def test_single_crossing_is_inconsistent(self):
        d = parse_sgd(
            "sgd 1\nvertex v1\nvertex v2\nedge e1 v1 v1\nedge e2 v2 v2\n"
            "crossing x1 over e1 0 under e2 0 sign +\n"
        )
        assert linking_number(d, Z, W) == 1
        assert linking_number_under(d, Z, W) == 0
        assert not over_under_consistent(d)
