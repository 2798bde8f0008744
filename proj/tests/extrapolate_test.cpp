#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mzv/extrapolate.hpp"
#include "oracles.hpp"

using namespace mzv;

namespace {
ComplexValue cv(double x, long prec = 256) { return ComplexValue(BigFloat(x, prec)); }
}  // namespace

TEST_CASE("constant sequence passes through with zero error") {
    TruncationPolicy pol(256, 1e-10, 3);
    std::vector<std::pair<long, ComplexValue>> pts = {{64, cv(2.5)}, {128, cv(2.5)}, {256, cv(2.5)}};
    SeriesValue v = extrapolate(pts, pol);
    CHECK(v.value.re().to_double() == 2.5);
    CHECK(v.err.magnitude == 0.0);
}

TEST_CASE("single point is an identity passthrough") {
    TruncationPolicy pol(256, 1e-6, 1);
    std::vector<std::pair<long, ComplexValue>> pts = {{64, cv(1.25)}};
    SeriesValue v = extrapolate(pts, pol);
    CHECK(v.value.re().to_double() == 1.25);
    CHECK(v.levels_used == 1);
}

TEST_CASE("zeta(2) partial sums gain at least 100x over the raw truncation") {
    // partial sums of sum 1/n^2 at M = 64, 128, 256, in high precision
    TruncationPolicy pol(256, 1e-10, 3);
    const long prec = 256;
    std::vector<std::pair<long, ComplexValue>> pts;
    BigFloat acc(prec);
    long next = 64;
    for (long n = 1; n <= 256; ++n) {
        BigFloat term(1L, prec);
        term /= n;
        term /= n;
        acc += term;
        if (n == next) {
            pts.emplace_back(n, ComplexValue(acc));
            next *= 2;
        }
    }
    SeriesValue v = extrapolate(pts, pol);
    const double zeta2 = static_cast<double>(oracles::zeta(2));
    double raw_err = std::fabs(pts.back().second.re().to_double() - zeta2);
    double ext_err = std::fabs(v.value.re().to_double() - zeta2);
    CHECK(raw_err > 1e-3);
    CHECK(ext_err * 100.0 <= raw_err);
}

TEST_CASE("non-geometric spacing is a contract error") {
    TruncationPolicy pol(256, 1e-10, 3);
    std::vector<std::pair<long, ComplexValue>> pts = {{64, cv(1)}, {100, cv(1)}, {200, cv(1)}};
    CHECK_THROWS_AS(extrapolate(pts, pol), contract_error);
}

TEST_CASE("log-modulated tails are handled when the model says so") {
    // partial sums of sum (ln n + 1)/n^2: tail ~ (ln M)/M family
    TruncationPolicy pol(1 << 14, 1e-10, 7);
    const long prec = 256;
    std::vector<long> ms;
    for (long m = (1 << 14) >> 6; m <= (1 << 14); m *= 2) ms.push_back(m);
    std::vector<CBigFloat> vs;
    BigFloat acc(prec);
    std::size_t next = 0;
    for (long n = 1; n <= ms.back(); ++n) {
        BigFloat t(static_cast<double>(std::log(static_cast<double>(n)) + 1.0), prec);
        t /= n;
        t /= n;
        acc += t;
        if (next < ms.size() && n == ms[next]) {
            vs.push_back(CBigFloat{acc, BigFloat(prec)});
            ++next;
        }
    }
    TailModel model;
    model.use_log = true;
    Extrapolated e = extrapolate_points(ms, vs, pol, model);
    // reference value from a much deeper direct sum
    long double ref = 0;
    for (long n = 2000000; n >= 1; --n)
        ref += (std::log(static_cast<long double>(n)) + 1.0L) / (static_cast<long double>(n) * n);
    ref += (std::log(2000000.0L) + 2.0L) / 2000000.0L;
    double raw_err = std::fabs(vs.back().re.to_double() - static_cast<double>(ref));
    double ext_err = std::fabs(e.value.re.to_double() - static_cast<double>(ref));
    CHECK(ext_err < raw_err * 1e-4);
    CHECK(ext_err <= 10 * std::max(e.err, 1e-12));
}
