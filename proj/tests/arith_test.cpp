#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "mzv/scalar.hpp"

using namespace mzv;

TEST_CASE("rational arithmetic is exactly closed") {
    Rational a(3, 4), b(4, 3);
    CHECK(a * b == Rational(1));
    CHECK((a / b) * b == a);
    CHECK(a + (-a) == Rational(0));
}

// Independent word-size oracle: fractions as (num, den) int64 pairs reduced
// with std::gcd, no GMP involved.
namespace {
struct Frac {
    long long n, d;
    static Frac make(long long n, long long d) {
        long long g = std::gcd(n < 0 ? -n : n, d);
        if (g == 0) g = 1;
        n /= g;
        d /= g;
        if (d < 0) {
            n = -n;
            d = -d;
        }
        return {n, d};
    }
    friend Frac operator+(Frac a, Frac b) { return make(a.n * b.d + b.n * a.d, a.d * b.d); }
    friend Frac operator*(Frac a, Frac b) { return make(a.n * b.n, a.d * b.d); }
};
}  // namespace

TEST_CASE("rational ops match an int64 oracle on 1000 random fraction pairs") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-1000000, 1000000);
    std::uniform_int_distribution<long> den(1, 1000000);
    for (int i = 0; i < 1000; ++i) {
        long an = num(rng), bn = num(rng);
        long ad = den(rng), bd = den(rng);
        Rational a(an, static_cast<unsigned long>(ad)), b(bn, static_cast<unsigned long>(bd));
        Frac fa = Frac::make(an, ad), fb = Frac::make(bn, bd);
        Frac sum = fa + fb, prod = fa * fb;
        CHECK(a + b == Rational(sum.n, static_cast<unsigned long>(sum.d)));
        CHECK(a * b == Rational(prod.n, static_cast<unsigned long>(prod.d)));
    }
}

TEST_CASE("bigfloat rounding error shrinks with precision") {
    // |bigfloat_q(z) - z| <= 2^{-q+2} |z| for rational z, and doubling the
    // precision never increases the error.
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<long> num(1, 1000000);
    for (int i = 0; i < 50; ++i) {
        Rational z(num(rng), static_cast<unsigned long>(num(rng)));
        double prev_err = -1.0;
        for (long prec : {64L, 128L, 256L, 512L}) {
            BigFloat f(z, prec);
            // measure the conversion error exactly, in high precision
            BigFloat exact(z, 1024);
            double err = (f - exact).abs().to_double();
            double bound = std::ldexp(std::fabs(z.to_double()), static_cast<int>(-prec + 2));
            CHECK(err <= bound);
            if (prev_err >= 0) CHECK(err <= prev_err);
            prev_err = err;
        }
    }
}

TEST_CASE("complex conjugation is an involution and field axioms hold exactly") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> num(-50, 50);
    std::uniform_int_distribution<long> den(1, 50);
    auto rnd = [&] {
        return ComplexValue(Rational(num(rng), static_cast<unsigned long>(den(rng))),
                            Rational(num(rng), static_cast<unsigned long>(den(rng))));
    };
    for (int i = 0; i < 100; ++i) {
        ComplexValue x = rnd(), y = rnd(), z = rnd();
        CHECK(x.conj().conj() == x);
        CHECK((x + y) * z == x * z + y * z);
        CHECK(x * y == y * x);
        CHECK((x + y) + z == x + (y + z));
        if (!y.is_zero()) CHECK((x / y) * y == x);
    }
}

TEST_CASE("parse_number accepts the documented literal forms") {
    ComplexValue q = parse_number("3/4", Backend::RATIONAL);
    CHECK(q.re().rational() == Rational(3, 4));
    CHECK(q.im().rational().is_zero());

    ComplexValue c = parse_number("1.5+2i", Backend::BIGFLOAT, 128);
    CHECK(c.re().bigfloat().to_double() == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(c.im().bigfloat().to_double() == doctest::Approx(2.0).epsilon(1e-15));

    CHECK(parse_number("0", Backend::RATIONAL).is_zero());
    CHECK(parse_number("-2/7", Backend::RATIONAL).re().rational() == Rational(-2, 7));
    CHECK(parse_number("2.5e-3", Backend::BIGFLOAT).re().bigfloat().to_double() ==
          doctest::Approx(0.0025));
    CHECK(parse_number("1-0.25i", Backend::BIGFLOAT).im().bigfloat().to_double() ==
          doctest::Approx(-0.25));
}

TEST_CASE("parse_number error paths") {
    CHECK_THROWS_AS(parse_number("abc", Backend::BIGFLOAT), parse_error);
    CHECK_THROWS_AS(parse_number("1.2.3", Backend::BIGFLOAT), parse_error);
    CHECK_THROWS_AS(parse_number("1+2", Backend::BIGFLOAT), parse_error);  // missing i
    CHECK_THROWS_AS(parse_number("", Backend::BIGFLOAT), parse_error);
    CHECK_THROWS_AS(parse_number("3/0", Backend::RATIONAL), contract_error);
    // decimal text under the rational backend is an unsupported format
    CHECK_THROWS_AS(parse_number("1.5", Backend::RATIONAL), parse_error);
    try {
        parse_number("12x", Backend::BIGFLOAT);
        CHECK(false);
    } catch (const parse_error& e) {
        CHECK(e.position() == 2);
    }
}

TEST_CASE("format_number round-trips to d-2 digits and passes rationals through") {
    CHECK(format_number(parse_number("3/4", Backend::RATIONAL), 5) == "3/4");
    CHECK(format_number(ComplexValue(Rational(0)), 5) == "0");

    ComplexValue pi_ish = parse_number("3.14159265", Backend::BIGFLOAT);
    CHECK(format_number(pi_ish, 5) == "3.1416");

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int i = 0; i < 50; ++i) {
        double re = u(rng), im = u(rng);
        ComplexValue v(BigFloat(re, 256), BigFloat(im, 256));
        for (std::size_t d : {6, 10, 17}) {
            ComplexValue back = parse_number(format_number(v, d), Backend::BIGFLOAT, 256);
            double tol = std::pow(10.0, -static_cast<double>(d) + 2) * std::fabs(re);
            CHECK(std::fabs(back.re().to_double() - re) <= std::max(tol, 1e-15));
        }
    }
}

TEST_CASE("mixed-backend arithmetic is rejected") {
    ComplexValue q = parse_number("1/2", Backend::RATIONAL);
    ComplexValue f = parse_number("0.5", Backend::BIGFLOAT);
    CHECK_THROWS_AS(q + f, contract_error);
}
