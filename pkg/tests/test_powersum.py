"""Power-sum polynomial constructions and regular-sequence decisions."""

import pytest

from pscert.errors import BadPrime
from pscert.powersum import (build_p, build_pq, pair_zset, regseq2,
                             regseq3_mod_p, regseq3_rational, trivial_factor,
                             triple_zset)
from pscert.unipoly import QQ, ZZ, ExactPoly, poly_gcd


class TestBuild:
    def test_small_values(self):
        # P_2 = 2x^2 + 2x + 2
        assert build_p(2) == ExactPoly([2, 2, 2], ZZ)
        # P_3 = -3x^2 - 3x
        assert build_p(3) == ExactPoly([0, -3, -3], ZZ)

    def test_symmetry(self):
        # P_n(z) = P_n(-1-z) for all n
        for n in range(2, 20):
            p = build_p(n)
            assert p.shift_compose_negate() == p

    def test_decomposition_exact(self):
        for n in range(2, 61):
            pq = build_pq(n)
            assert pq.C.to_ring(QQ) * pq.Q == pq.P.to_ring(QQ)
            assert pq.Q.degree % 6 == 0

    def test_trivial_factor_table(self):
        z = ExactPoly([0, 1], ZZ)
        z1 = ExactPoly([1, 1], ZZ)
        w = ExactPoly([1, 1, 1], ZZ)
        assert trivial_factor(6) == ExactPoly([1], ZZ)
        assert trivial_factor(7) == z * z1 * w * w
        assert trivial_factor(8) == w
        assert trivial_factor(9) == z * z1
        assert trivial_factor(10) == w * w
        assert trivial_factor(11) == z * z1 * w

    def test_vacuous_cofactors(self):
        for n in (2, 3, 4, 5, 7):
            assert build_pq(n).Q.degree == 0


class TestPairZSet:
    def test_known_empty(self):
        z = pair_zset(6, 10)
        assert z.is_empty
        assert not z.zero_minus_one_present
        assert not z.cube_roots_present

    def test_both_odd_flags(self):
        z = pair_zset(5, 7)
        assert z.is_empty
        assert z.zero_minus_one_present  # 2 does not divide bc
        assert z.cube_roots_present      # 3 divides neither

    def test_three_divides_one_exponent(self):
        z = pair_zset(3, 5)
        assert z.zero_minus_one_present
        assert not z.cube_roots_present

    def test_mixed_flags(self):
        z = pair_zset(2, 5)
        assert not z.zero_minus_one_present
        assert z.cube_roots_present

    def test_gcd_with_trivial_q(self):
        # Q_2 is constant: the nontrivial zero set is empty by definition
        z = pair_zset(2, 8)
        assert z.is_empty


class TestTripleZSet:
    def test_known_empty(self):
        assert triple_zset(2, 3, 4).is_empty
        assert triple_zset(2, 3, 5).is_empty

    def test_input_validation(self):
        with pytest.raises(ValueError):
            triple_zset(2, 4, 6)  # gcd 2
        with pytest.raises(ValueError):
            triple_zset(3, 2, 4)


class TestRegSeq2:
    def test_regular(self):
        assert regseq2(1, 2).verdict == "Regular"
        assert regseq2(2, 3).verdict == "Regular"

    def test_both_odd_reduced(self):
        v = regseq2(3, 5)
        assert v.verdict == "NotRegular"

    def test_common_factor_reduction(self):
        # (2, 6) reduces to (1, 3): both odd, not regular
        assert regseq2(2, 6).verdict == "NotRegular"
        # (2, 4) reduces to (1, 2): regular
        assert regseq2(2, 4).verdict == "Regular"

    def test_char_2(self):
        assert regseq2(1, 2, characteristic=2).verdict == "NotRegular"


class TestRegSeq3Rational:
    def test_all_odd(self):
        v = regseq3_rational(1, 3, 5)
        assert v.verdict == "NotRegular"
        assert "0, -1" in str(v.witness)

    def test_no_multiple_of_three(self):
        v = regseq3_rational(1, 2, 5)
        assert v.verdict == "NotRegular"
        assert "cube" in str(v.witness)

    def test_regular_instances(self):
        assert regseq3_rational(1, 2, 3).verdict == "Regular"
        assert regseq3_rational(1, 6, 100).verdict == "Regular"
        assert regseq3_rational(2, 3, 4).verdict == "Regular"

    def test_gcd_reduction(self):
        # (2, 4, 6) -> (1, 2, 3)
        assert regseq3_rational(2, 4, 6).verdict == "Regular"


class TestRegSeq3ModP:
    def test_large_prime_witness(self):
        v = regseq3_mod_p(1, 6, 100, 4594399)
        assert v.verdict == "NotRegular"
        assert v.witness is not None

    def test_small_regular(self):
        assert regseq3_mod_p(1, 2, 3, 5).verdict == "Regular"

    def test_rational_still_regular(self):
        assert regseq3_rational(1, 6, 100).verdict == "Regular"

    def test_bad_primes(self):
        with pytest.raises(BadPrime):
            regseq3_mod_p(1, 2, 3, 2)
        with pytest.raises(BadPrime):
            regseq3_mod_p(1, 2, 3, 3)

    def test_generic_prime_regular(self):
        assert regseq3_mod_p(1, 6, 100, 101).verdict == "Regular"

    def test_elimination_route(self):
        # first exponent > 1 exercises the resultant path
        assert regseq3_mod_p(2, 3, 4, 101).verdict == "Regular"


class TestCrossChecks:
    def test_pair_gcd_matches_direct_gcd(self):
        # gcd(P_3, P_5) = x(x+1) directly on the full polynomials
        g = poly_gcd(build_p(3).to_ring(QQ), build_p(5).to_ring(QQ)).monic()
        assert g == ExactPoly([0, 1, 1], QQ).monic()

    def test_zset_empty_iff_regular(self):
        for (b, c) in [(2, 3), (3, 4), (6, 10), (4, 9), (2, 9)]:
            z = pair_zset(b, c)
            v = regseq3_rational(1, b, c)
            if v.verdict == "Regular":
                assert z.is_empty and not z.has_trivial_zeros
