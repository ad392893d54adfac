from fractions import Fraction

import pytest

from mcwc.core import CodeParameters, DomainError, ShapeError
from mcwc.bounds import (
    asymptotic_point,
    best_upper_bound,
    binary_entropy,
    comparison_f,
    gv_lower_bound,
    johnson_eq3,
    johnson_recursive,
    mu_c,
    mu_gv,
    plotkin_bound,
    plotkin_discrete,
    spherical_bound,
)


def uni(m, n, w, d):
    return CodeParameters.uniform(m, n, w, d)


class TestJohnsonEq3:
    def test_5_5(self):
        r = johnson_eq3(CodeParameters((5, 5), (2, 2), 6))
        assert r.value == 5
        assert r.certificate["denominator"] == Fraction(3, 5)

    def test_5_7(self):
        r = johnson_eq3(CodeParameters((5, 7), (2, 2), 6))
        assert r.value == 8
        assert r.certificate["denominator"] == Fraction(13, 35)

    def test_nonpositive_denominator(self):
        assert johnson_eq3(CodeParameters((5, 5), (2, 2), 2)).value is None

    def test_odd_distance(self):
        assert johnson_eq3(CodeParameters((5, 5), (2, 2), 5)).value is None


class TestJohnsonRecursive:
    def test_two_blocks_weight_two(self):
        # one single-step recursion on the first block reaches the optimum 7
        r = johnson_recursive(CodeParameters((5, 7), (2, 2), 6))
        assert r.value == 7
        trace = r.certificate["trace"]
        assert trace[0] == ("eq1", 2, 5)
        assert trace[-1][0] in ("eq3", "single", "space", "product", "no-word")

    def test_base_single(self):
        assert johnson_recursive(CodeParameters((3, 3), (2, 2), 10)).value == 1

    def test_base_no_word(self):
        assert johnson_recursive(CodeParameters((3,), (4,), 2)).value == 0

    def test_matches_pair_target_floor(self):
        # single-weight-2 pairs: T(2,n1;2,n2;6) <= floor(n2(n1-1)/4)
        for n1, n2 in [(3, 3), (5, 5), (5, 7), (9, 17)]:
            r = johnson_recursive(CodeParameters((n1, n2), (2, 2), 6))
            assert r.value == (n2 * (n1 - 1)) // 4

    def test_space_base(self):
        assert johnson_recursive(uni(2, 4, 2, 2)).value == 36


class TestPlotkin:
    def test_m2_n5(self):
        r = plotkin_bound(uni(2, 5, 2, 6))
        assert r.value == 5 and r.certificate["b"] == Fraction(3, 5)

    def test_m3_n4(self):
        assert plotkin_bound(uni(3, 4, 2, 10)).value == 2

    def test_inapplicable(self):
        assert plotkin_bound(uni(2, 5, 2, 2)).value is None

    def test_shape_error(self):
        with pytest.raises(ShapeError):
            plotkin_bound(CodeParameters((5, 7), (2, 2), 6))

    def test_equivalence_with_johnson_eq3(self):
        # the two closed forms are identical on uniform shapes
        for m in range(1, 6):
            for n in range(2, 9):
                for w in range(1, n):
                    for u in range(1, m * w + 1):
                        p = uni(m, n, w, 2 * u)
                        a, b = plotkin_bound(p), johnson_eq3(p)
                        assert (a.value is None) == (b.value is None)
                        if a.value is not None:
                            assert a.value == b.value, (m, n, w, u)


class TestPlotkinDiscrete:
    def test_no_cut_when_divisible(self):
        # n | M*w makes the correction vanish at the continuous value
        r = plotkin_discrete(uni(2, 5, 2, 6))
        assert r.value == plotkin_bound(uni(2, 5, 2, 6)).value == 5

    def test_strict_improvement_located_by_scan(self):
        # located by exhaustive scan over m,n,w,d <= 12
        p = uni(1, 8, 2, 6)
        assert plotkin_bound(p).value == 2
        assert plotkin_discrete(p).value == 1

    def test_never_exceeds_continuous(self):
        for m in range(1, 7):
            for n in range(2, 9):
                for w in range(1, n):
                    for u in range(1, m * w + 1):
                        p = uni(m, n, w, 2 * u)
                        c = plotkin_bound(p)
                        if c.value is not None:
                            assert plotkin_discrete(p).value <= c.value


class TestSpherical:
    def test_floor_branch(self):
        assert spherical_bound(uni(2, 5, 2, 6)).value == 5

    def test_single_codeword_branch(self):
        # b > u: maximum cosine below -1
        r = spherical_bound(uni(1, 4, 2, 8))
        assert r.value == 1 and r.certificate["case"] == "cosine < -1"

    def test_simplex_branch_located_by_scan(self):
        # located by exhaustive scan over m,n,w <= 10
        r = spherical_bound(uni(1, 8, 3, 4))
        assert r.certificate["case"] == "simplex"
        assert r.value == 1 * (8 - 1) + 1 == 8

    def test_inapplicable(self):
        assert spherical_bound(uni(2, 5, 2, 4)).value is None


class TestGv:
    def test_m2_n5(self):
        r = gv_lower_bound(uni(2, 5, 2, 6))
        assert r.value == 2
        assert r.certificate["ball_volume"] == 55
        assert r.certificate["numerator"] == 100

    def test_radius_zero_ball(self):
        r = gv_lower_bound(uni(2, 5, 2, 2))
        assert r.certificate["ball_volume"] == 1
        assert r.value == 100

    def test_reduces_to_cwc_case(self):
        assert gv_lower_bound(uni(1, 5, 2, 4)).value == 2  # ceil(10/7)


class TestBestUpper:
    def test_recursive_beats_eq3(self):
        r = best_upper_bound(CodeParameters((5, 7), (2, 2), 6))
        assert r.value == 7 and r.method == "johnson-recursive"

    def test_base_case_fires(self):
        assert best_upper_bound(CodeParameters((2, 2), (1, 1), 6)).value == 1

    def test_3_3_single_word(self):
        assert best_upper_bound(CodeParameters((3, 3), (2, 2), 6)).value == 1


class TestAsymptotics:
    def test_mu_c_limit_at_zero(self):
        assert abs(mu_c(0, Fraction(1, 2)) - 0.5) < 1e-12

    def test_mu_c_vanishes(self):
        assert abs(mu_c(Fraction(1, 2), Fraction(1, 2))) < 1e-12

    def test_mu_c_quarter(self):
        assert abs(mu_c(Fraction(1, 4), Fraction(1, 2)) - 0.0943609) < 1e-6

    def test_mu_gv_quarter(self):
        assert abs(mu_gv(Fraction(1, 4), Fraction(1, 2)) - 0.1887218) < 1e-6

    def test_mu_gv_limit_at_zero(self):
        omega = Fraction(1, 3)
        assert abs(mu_gv(0, omega) - binary_entropy(omega)) < 1e-12

    def test_equality_on_the_locus(self):
        # mu_gv == mu_c exactly along delta = 2*omega*(1 - omega)
        for omega in (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)):
            delta = 2 * omega * (1 - omega)
            assert abs(mu_gv(delta, omega) - mu_c(delta, omega)) < 1e-12

    def test_f_zero_at_locus(self):
        for omega in (Fraction(1, 3), Fraction(1, 4), Fraction(2, 5)):
            x = omega - omega * omega
            assert abs(comparison_f(x, omega)) < 1e-12

    def test_f_limit_at_zero(self):
        import mpmath

        value = comparison_f(0, Fraction(1, 4))
        ref = -mpmath.mpf(3) / 4 * mpmath.log(mpmath.mpf(3) / 4, 2)
        assert abs(value - ref) < 1e-12
        assert value > 0

    def test_f_matches_rate_difference(self):
        for q in (2, 3, 4):
            omega = Fraction(1, q)
            # stay inside both domains: x <= omega and x/omega <= (q-1)/q
            limit = min(Fraction(1, 4), omega, Fraction(q - 1, q * q))
            for k in range(1, 17):
                x = Fraction(k, 64)
                if x > limit:
                    break
                delta = 2 * x
                diff = mu_gv(delta, omega) - mu_c(delta, omega)
                assert abs(diff - comparison_f(x, omega)) < 1e-9, (q, x)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            mu_c(Fraction(1, 4), Fraction(2, 5))  # 1/omega not an integer
        with pytest.raises(DomainError):
            mu_c(Fraction(1, 2), Fraction(1, 4))  # delta/(2 omega) above (q-1)/q
        with pytest.raises(DomainError):
            mu_gv(Fraction(3, 4), Fraction(1, 3))  # delta above max(1/2, 2 omega)
        with pytest.raises(DomainError):
            comparison_f(Fraction(3, 4), Fraction(1, 2))  # x >= 1 - omega

    def test_asymptotic_point(self):
        point = asymptotic_point(Fraction(1, 4), Fraction(1, 2))
        assert point.mu_c is not None
        assert abs(point.mu_gv - point.mu_c - point.f) < 1e-12
        assert asymptotic_point(Fraction(1, 4), Fraction(2, 5)).mu_c is None
