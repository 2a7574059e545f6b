"""Graded ideal membership for power sums, with verified cofactors."""

import pytest

from pscert.errors import DegreeMismatch
from pscert.membership import (MultiPoly, graded_membership,
                               monomials_of_degree, power_sum,
                               zerodivisor_identity_check)


class TestMultiPoly:
    def test_mul_degree(self):
        p = power_sum(3, 2)
        assert (p * p).degree() == 4

    def test_homogeneous(self):
        assert power_sum(4, 5).is_homogeneous()
        mixed = power_sum(2, 1) + power_sum(2, 2)
        assert not mixed.is_homogeneous()

    def test_monomials_count(self):
        # C(n + d - 1, d) monomials of degree d in n variables
        assert len(monomials_of_degree(3, 2)) == 6
        assert len(monomials_of_degree(4, 3)) == 20


class TestMembership:
    def test_p5_in_p1_p2_four_vars(self):
        ans = graded_membership(power_sum(4, 5),
                                [power_sum(4, 1), power_sum(4, 2)])
        assert ans.member
        assert ans.cofactors is not None

    def test_p5_in_p1_p3_four_vars(self):
        ans = graded_membership(power_sum(4, 5),
                                [power_sum(4, 1), power_sum(4, 3)])
        assert ans.member

    def test_p2_squared_in_p1_p4_three_vars(self):
        p2 = power_sum(3, 2)
        ans = graded_membership(p2 * p2, [power_sum(3, 1), power_sum(3, 4)])
        assert ans.member

    def test_p5_not_in_p2_p3_three_vars(self):
        ans = graded_membership(power_sum(3, 5),
                                [power_sum(3, 2), power_sum(3, 3)])
        assert not ans.member
        assert ans.cofactors is None

    def test_cofactors_reexpand(self):
        target = power_sum(4, 5)
        gens = [power_sum(4, 1), power_sum(4, 2)]
        ans = graded_membership(target, gens)
        acc = MultiPoly.zero(4)
        for cof, g in zip(ans.cofactors, gens):
            acc = acc + cof * g
        assert acc == target

    def test_zero_target(self):
        ans = graded_membership(MultiPoly.zero(3), [power_sum(3, 2)])
        assert ans.member

    def test_inhomogeneous_rejected(self):
        mixed = power_sum(2, 1) + power_sum(2, 2)
        with pytest.raises(DegreeMismatch):
            graded_membership(mixed, [power_sum(2, 1)])

    def test_self_membership(self):
        p8 = power_sum(4, 8)
        ans = graded_membership(p8, [power_sum(4, 2), p8])
        assert ans.member


class TestZerodivisorIdentity:
    def test_identity_holds(self):
        assert zerodivisor_identity_check().member

    def test_perturbed_coefficient_fails(self):
        assert not zerodivisor_identity_check(coefficient=3).member
        assert not zerodivisor_identity_check(coefficient=1).member
