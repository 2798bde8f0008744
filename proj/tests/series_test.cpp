#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mzv/series.hpp"
#include "oracles.hpp"

using namespace mzv;

namespace {

ParameterTriple unit_real(long prec = 256) { return ParameterTriple::real(1, 1, 1, prec); }
ParameterTriple generic_real(long prec = 256) { return ParameterTriple::real(0.7, 1.3, 0.9, prec); }
ParameterTriple generic_rational() {
    return ParameterTriple::rational(Rational(7, 10), Rational(13, 10), Rational(9, 10));
}

TruncationPolicy quick_pol(long m = 1 << 14, double eps = 1e-10, int levels = 7) {
    return TruncationPolicy(m, eps, levels);
}

double val(const SeriesValue& v) { return v.value.re().to_double(); }

// Literal H truncation through the index-set module and the pointwise
// g/Pi operations; independent of the h_sum evaluator.
ComplexValue h_brute(const Composition& k, const ParameterTriple& p, long M) {
    const std::size_t d = k.depth();
    TupleSetSlice s = enumerate_restricted(IndexWord::repeat(Letter::LE, d - 1), 1, d, M);
    std::vector<int> rest_parts(k.parts().begin() + 1, k.parts().end());
    Composition rest(rest_parts);
    ComplexValue total(Rational(0));
    for (const Tuple& t : s.tuples) {
        ComplexValue term = g_factor(p, t.front(), 0, 0) / g_factor(p, t.back(), 0, 0);
        ComplexValue base = p.gamma() + ComplexValue(Rational(t.front()));  // (m_1+gamma)
        for (int e = 0; e < k.parts()[0] - 1; ++e) term = term / base;
        std::vector<long> rest_idx(t.begin() + 1, t.end());
        term = term * pi_weight(p, rest_idx, rest);
        term = term / ComplexValue(Rational(t.back() - t.front()));
        total = total + term;
    }
    return total;
}

}  // namespace

TEST_CASE("pochhammer basics") {
    CHECK(pochhammer(ComplexValue(Rational(5)), 0).re().rational() == Rational(1));
    CHECK(pochhammer(ComplexValue(Rational(1)), 4).re().rational() == Rational(24));
    CHECK(pochhammer(ComplexValue(Rational(1, 2)), 3).re().rational() == Rational(15, 8));
    CHECK_THROWS_AS(pochhammer(ComplexValue(Rational(1)), -1), contract_error);
}

TEST_CASE("g factors at unit parameters and the m=-1 convention") {
    ParameterTriple p = ParameterTriple::rational(Rational(1), Rational(1), Rational(1));
    for (long m : {0L, 3L, 10L})
        CHECK(g_factor(p, m, 0, 0).re().rational() == Rational(1));
    CHECK(g_factor(p, 3, 1, 1).re().rational() == Rational(16));  // (m+1)^2
    CHECK(g_factor(generic_rational(), -1, 1, 0).is_zero());
    CHECK_THROWS_AS(g_factor(p, 3, 2, 0), contract_error);
}

TEST_CASE("pi weights") {
    ParameterTriple p = ParameterTriple::rational(Rational(1), Rational(1), Rational(1));
    CHECK(pi_weight(p, {2}, Composition({2})).re().rational() == Rational(1, 9));
    CHECK(pi_weight(p, {1}, Composition({1})).re().rational() == Rational(1, 2));
    CHECK_THROWS_AS(pi_weight(p, {1, 2}, Composition({2})), contract_error);
}

TEST_CASE("Pi bridges g^{1,1} to g^{0,0} exactly") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> num(1, 64), den(1, 64);
    for (int iter = 0; iter < 20; ++iter) {
        Rational a(num(rng), static_cast<unsigned long>(den(rng)));
        Rational b(num(rng), static_cast<unsigned long>(den(rng)));
        Rational g(num(rng), static_cast<unsigned long>(den(rng)));
        if (!((a + b - g) > Rational(0))) continue;
        ParameterTriple p = ParameterTriple::rational(a, b, g);
        for (long m : {0L, 1L, 5L, 17L, 50L}) {
            ComplexValue lhs = pi_weight(p, {m}, Composition({2})) * g_factor(p, m, 1, 1);
            CHECK(lhs == g_factor(p, m, 0, 0));
        }
    }
}

TEST_CASE("single sums hit their oracles") {
    auto p1 = unit_real();
    SeriesValue z2 = z_triple(ExponentTriple(2, 0, 0), p1, quick_pol());
    CHECK(std::fabs(val(z2) - oracles::kZeta2) < 1e-11);
    CHECK(std::fabs(static_cast<double>(oracles::zeta(2)) - oracles::kZeta2) < 1e-13);

    // telescoping: sum 1/((n+1)(n+2)) = 1
    ParameterTriple p12 = ParameterTriple::real(1, 2, 1);
    SeriesValue tele = z_triple(ExponentTriple(1, 1, 0), p12, quick_pol());
    CHECK(std::fabs(val(tele) - 1.0) < 1e-10);

    // exponent placement symmetry at equal parameters
    SeriesValue viaC = z_triple(ExponentTriple(0, 0, 2), p1, quick_pol());
    CHECK(std::fabs(val(viaC) - val(z2)) <= 10 * (viaC.err.magnitude + z2.err.magnitude) + 1e-14);
}

TEST_CASE("z_double agrees with its z_triple embedding") {
    ComplexValue a(BigFloat(0.7, 256)), b(BigFloat(1.3, 256));
    SeriesValue z2 = z_double(2, 0, ComplexValue(BigFloat(1.0, 256)), b, quick_pol());
    CHECK(std::fabs(val(z2) - oracles::kZeta2) < 1e-11);

    SeriesValue zd = z_double(2, 1, a, b, quick_pol());
    SeriesValue zt = z_triple(ExponentTriple(2, 1, 0), ParameterTriple::real(0.7, 1.3, 0.9),
                              quick_pol());
    CHECK(std::fabs(val(zd) - val(zt)) <= 10 * (zd.err.magnitude + zt.err.magnitude) + 1e-20);

    SeriesValue one = z_double(1, 1, ComplexValue(BigFloat(1.0, 256)),
                               ComplexValue(BigFloat(2.0, 256)), quick_pol());
    CHECK(std::fabs(val(one) - 1.0) < 1e-10);
    CHECK_THROWS_AS(z_double(1, 0, a, b, quick_pol()), contract_error);
}

TEST_CASE("two-parameter series reduces to zeta-star values") {
    SeriesValue zs = zeta_star(Composition({2}), quick_pol());
    CHECK(std::fabs(val(zs) - oracles::kZeta2) < 1e-11);

    SeriesValue z12 = zeta_star(Composition({1, 2}), quick_pol(1 << 15, 1e-10, 8));
    CHECK(std::fabs(val(z12) - oracles::kZetaStar12) < 1e-11);
    CHECK(std::fabs(static_cast<double>(oracles::zeta_star_12()) - oracles::kZetaStar12) < 5e-13);

    CHECK_THROWS_AS(zeta_star(Composition({2, 1}), quick_pol()), contract_error);
}

TEST_CASE("two-parameter truncations equal the chain oracle exactly") {
    ComplexValue a(Rational(1, 2)), b(Rational(3, 2));
    Composition k({1, 2});
    TruncationPolicy pol(20, 1e-10, 1);
    SeriesValue truncated = z1_star2(k, a, b, pol);
    ParameterTriple p(a, b, b);
    ComplexValue brute = brute_force_chain(detail::z1_star2_spec(k, p), 20);
    CHECK(truncated.value == brute);
}

TEST_CASE("gamma=beta collapses the three-parameter chain onto the two-parameter one") {
    // Termwise: g^{0,0} degenerates to (alpha)_m/m! and the middle factors
    // match, so the truncations agree exactly.
    ComplexValue a(Rational(7, 10)), b(Rational(13, 10));
    ParameterTriple p3(a, b, b);
    for (const Composition& k : {Composition({1, 2}), Composition({2, 3}), Composition({3})}) {
        TruncationPolicy pol(16, 1e-10, 1);
        CHECK(z1_star3(k, p3, pol).value == z1_star2(k, a, b, pol).value);
    }
}

TEST_CASE("three-parameter series: depth one collapses to a single sum") {
    auto p = generic_real();
    SeriesValue nested = z1_star3(Composition({3}), p, quick_pol());
    SeriesValue single = z_triple(ExponentTriple(0, 0, 3), p, quick_pol());
    CHECK(std::fabs(val(nested) - val(single)) <=
          10 * (nested.err.magnitude + single.err.magnitude) + 1e-20);
}

TEST_CASE("three-parameter series at unit parameters matches zeta-star") {
    SeriesValue v = z1_star3(Composition({1, 2}), unit_real(), quick_pol(1 << 15, 1e-10, 8));
    CHECK(std::fabs(val(v) - oracles::kZetaStar12) < 1e-10);
}

TEST_CASE("three-parameter truncation equals the enumeration oracle exactly") {
    Composition k({2, 3});
    auto p = generic_rational();
    TruncationPolicy pol(20, 1e-10, 1);
    SeriesValue truncated = z1_star3(k, p, pol);
    CHECK(truncated.value == brute_force_chain(detail::z1_star3_spec(k, p), 20));
    CHECK(truncated.err.magnitude == 0.0);
}

TEST_CASE("auxiliary sum truncation equals the enumeration oracle exactly") {
    Composition k({2});
    auto p = generic_rational();
    TruncationPolicy pol(15, 1e-10, 1);
    SeriesValue truncated = z2_star(k, p, pol);
    CHECK(truncated.value == brute_force_chain(detail::z2_star_spec(k, p), 15));
    CHECK_THROWS_AS(z2_star(Composition({2, 1}), p, pol), contract_error);

    auto pu = ParameterTriple::rational(Rational(1), Rational(1), Rational(1));
    CHECK(z2_star(k, pu, pol).value == brute_force_chain(detail::z2_star_spec(k, pu), 15));
}

TEST_CASE("composition parsing") {
    CHECK(Composition::from_string("2,3,4").parts() == std::vector<int>{2, 3, 4});
    CHECK(Composition::from_string("7").weight() == 7);
    CHECK_THROWS_AS(Composition::from_string(""), parse_error);
    CHECK_THROWS_AS(Composition::from_string("2,,3"), parse_error);
    CHECK_THROWS_AS(Composition::from_string("2,"), parse_error);
    CHECK_THROWS_AS(Composition::from_string("2 3"), parse_error);
    CHECK_THROWS_AS(Composition::from_string("0"), contract_error);
    CHECK(Composition({2, 3}).rotated(2) == Composition({3, 2}));
    CHECK(Composition({2, 3, 4}).rotated(3) == Composition({4, 2, 3}));
    CHECK(Composition({1, 2}).maximal_height() == false);
    CHECK(Composition({1, 2}).tail_admissible() == true);
    CHECK(Composition({2, 1}).tail_admissible() == false);
}

TEST_CASE("the alpha bridge ties the auxiliary sum to the two-parameter series") {
    // alpha Z_II*(3,2; a,b,b) = Z_I*(2,2; a,b) at a=b=1
    auto pol = quick_pol(1 << 14, 1e-10, 7);
    SeriesValue z2v = z2_star(Composition({3, 2}), unit_real(), pol);
    SeriesValue z1v = zeta_star(Composition({2, 2}), pol);
    CHECK(std::fabs(val(z2v) - val(z1v)) < 1e-10);
    CHECK(std::fabs(val(z1v) - oracles::kZetaStar22) < 1e-10);
    CHECK(std::fabs(static_cast<double>(oracles::zeta_star_22()) - oracles::kZetaStar22) < 5e-13);
}

TEST_CASE("F sums") {
    SeriesValue f00 = f_sum(0, 0, unit_real(), quick_pol());
    CHECK(std::fabs(val(f00) - oracles::kF00Unit) < 1e-11);
    CHECK_THROWS_AS(f_sum(3, 1, unit_real(), quick_pol()), contract_error);
    CHECK_THROWS_AS(f_sum(-1, 1, unit_real(), quick_pol()), contract_error);
}

TEST_CASE("H sums") {
    SeriesValue h12 = h_sum(Composition({1, 2}), unit_real(), quick_pol(1 << 13, 1e-8, 6));
    CHECK(std::fabs(val(h12) - oracles::kZeta3) < 1e-6);
    CHECK(std::fabs(val(h12) - oracles::kZeta3) <= 10 * h12.err.magnitude);
    CHECK(std::fabs(static_cast<double>(oracles::h_12_unit()) - oracles::kZeta3) < 1e-10);

    CHECK_THROWS_AS(h_sum(Composition({3}), unit_real(), quick_pol()), contract_error);
    CHECK_THROWS_AS(h_sum(Composition({1, 1}), unit_real(), quick_pol()), contract_error);
}

TEST_CASE("H truncation equals the restricted enumeration oracle exactly") {
    Composition k({2, 2});
    auto p = generic_rational();
    TruncationPolicy pol(15, 1e-10, 1);
    SeriesValue truncated = h_sum(k, p, pol);
    CHECK(truncated.value == h_brute(k, p, 15));

    Composition k3({1, 2, 2});
    TruncationPolicy pol3(12, 1e-10, 1);
    CHECK(h_sum(k3, p, pol3).value == h_brute(k3, p, 12));

    // depth 4 exercises the prefix-product lookup, depth 5 the incremental
    // middle chain
    Composition k4({2, 1, 1, 2});
    TruncationPolicy pol4(8, 1e-10, 1);
    CHECK(h_sum(k4, p, pol4).value == h_brute(k4, p, 8));
    Composition k5({1, 2, 1, 1, 2});
    TruncationPolicy pol5(6, 1e-10, 1);
    CHECK(h_sum(k5, p, pol5).value == h_brute(k5, p, 6));
}

TEST_CASE("swapping alpha and beta is an exact symmetry of the truncations") {
    auto p = generic_rational();
    auto ps = p.swapped_alpha_beta();
    TruncationPolicy pol(18, 1e-10, 1);
    CHECK(z1_star3(Composition({2, 3}), p, pol).value ==
          z1_star3(Composition({2, 3}), ps, pol).value);
    CHECK(z2_star(Composition({2, 2}), p, pol).value ==
          z2_star(Composition({2, 2}), ps, pol).value);
    CHECK(h_sum(Composition({1, 3}), p, pol).value == h_sum(Composition({1, 3}), ps, pol).value);
    CHECK(f_sum(1, 2, p, pol).value == f_sum(1, 2, ps, pol).value);
}

TEST_CASE("alpha-beta swap symmetry holds within combined err in big-floats") {
    auto pol = quick_pol(1 << 13, 1e-8, 6);
    auto p = generic_real();
    auto ps = p.swapped_alpha_beta();
    SeriesValue a = z1_star3(Composition({2, 3}), p, pol);
    SeriesValue b = z1_star3(Composition({2, 3}), ps, pol);
    CHECK(std::fabs(val(a) - val(b)) <= 10 * (a.err.magnitude + b.err.magnitude) + 1e-18);
    SeriesValue fa = f_sum(1, 2, p, pol);
    SeriesValue fb = f_sum(1, 2, ps, pol);
    CHECK(std::fabs(val(fa) - val(fb)) <= 10 * (fa.err.magnitude + fb.err.magnitude) + 1e-18);
}

TEST_CASE("z_triple is invariant under permuting exponent/parameter pairs") {
    auto pol = quick_pol();
    ParameterTriple p = generic_real();
    SeriesValue a = z_triple(ExponentTriple(2, 1, 1), p, pol);
    ParameterTriple perm(p.gamma(), p.alpha(), p.beta());
    SeriesValue b = z_triple(ExponentTriple(1, 2, 1), perm, pol);
    CHECK(std::fabs(val(a) - val(b)) <= 10 * (a.err.magnitude + b.err.magnitude) + 1e-20);
}

TEST_CASE("partial sums of positive-parameter series are nonnegative and nondecreasing") {
    auto p = generic_rational();
    for (const Composition& k : {Composition({2, 2}), Composition({1, 3})}) {
        Rational prev(-1);
        for (long M : {0L, 1L, 2L, 4L, 8L, 16L}) {
            ComplexValue v = brute_force_chain(detail::z1_star3_spec(k, p), M);
            Rational r = v.re().rational();
            CHECK(r >= Rational(0));
            CHECK(r >= prev);
            CHECK(v.im().rational().is_zero());
            prev = r;
        }
    }
}

TEST_CASE("degeneration: gamma=beta reduces the triple sum to a double sum") {
    ComplexValue a(BigFloat(0.7, 256)), b(BigFloat(1.3, 256));
    ParameterTriple p(a, b, b);
    SeriesValue three = z_triple(ExponentTriple(2, 1, 1), p, quick_pol());
    SeriesValue two = z_double(2, 2, a, b, quick_pol());
    CHECK(std::fabs(val(three) - val(two)) <=
          10 * (three.err.magnitude + two.err.magnitude) + 1e-20);
}

TEST_CASE("divergence guard refuses slow decay") {
    // Re(t) = 0.01: the tails decay like m^{-1.01}
    auto p = ParameterTriple::real(0.505, 0.505, 1.0);
    CHECK_THROWS_AS(z1_star3(Composition({1, 2}), p, quick_pol(1 << 12, 1e-8, 5)),
                    divergence_error);
    CHECK_THROWS_AS(h_sum(Composition({2, 1}), p, quick_pol(1 << 12, 1e-8, 5)), divergence_error);
}

TEST_CASE("diagnostics respect their invariants") {
    auto pol = quick_pol(1 << 12, 1e-8, 5);
    for (const Composition& k : {Composition({2, 2}), Composition({2, 3})}) {
        SeriesValue v = z1_star3(k, generic_real(), pol);
        CHECK(v.err.magnitude >= 0);
        CHECK(v.terms_used <= pol.max_terms * static_cast<long>(k.depth()));
        CHECK(v.levels_used >= 1);
        CHECK(v.levels_used <= pol.levels);
    }
}

TEST_CASE("series values are deterministic") {
    auto pol = quick_pol(1 << 12, 1e-8, 5);
    SeriesValue a = z1_star3(Composition({2, 2}), generic_real(), pol);
    SeriesValue b = z1_star3(Composition({2, 2}), generic_real(), pol);
    CHECK(a.value == b.value);
    CHECK(a.err.magnitude == b.err.magnitude);
}

TEST_CASE("parameter triple validation") {
    CHECK_THROWS_AS(ParameterTriple::real(0.5, 0.5, 1.5), contract_error);  // Re(t) < 0
    CHECK_THROWS_AS(ParameterTriple::real(-1.0, 1.0, 0.5), contract_error);  // alpha in Z_{<=0}
    CHECK_THROWS_AS(ParameterTriple::real(1.0, 1.0, -2.0 + 1e-14), contract_error);  // near pole
    CHECK_NOTHROW(ParameterTriple::real(-0.5, 1.0, 0.25));  // negative but not integer
    // in rational mode the pole test is exact: -2 + tiny is fine
    CHECK_NOTHROW(ParameterTriple::rational(Rational(1), Rational(1),
                                            Rational(-1999999, 1000000)));
    CHECK_THROWS_AS(ParameterTriple::rational(Rational(1), Rational(1), Rational(-2)),
                    contract_error);
}
