#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mzv/suite.hpp"

using namespace mzv;

namespace {

IdentityCase base_case(IdentityId id) {
    IdentityCase c;
    c.id = id;
    c.policy = TruncationPolicy(1 << 13, 1e-8, 6);
    return c;
}

void set_real_point(IdentityCase& c, long prec = 256) {
    c.alpha = ComplexValue(BigFloat(0.7, prec));
    c.beta = ComplexValue(BigFloat(1.3, prec));
    c.gamma = ComplexValue(BigFloat(0.9, prec));
}

void set_rational_point(IdentityCase& c) {
    c.alpha = ComplexValue(Rational(7, 10), Rational());
    c.beta = ComplexValue(Rational(13, 10), Rational());
    c.gamma = ComplexValue(Rational(9, 10), Rational());
}

}  // namespace

TEST_CASE("the registry lists all 21 identities in a stable order") {
    const auto& all = list_identities();
    CHECK(all.size() == 21);
    CHECK(std::find(all.begin(), all.end(), IdentityId::MAIN) != all.end());
    const auto again = list_identities();
    CHECK(all == again);
    // names round-trip
    for (IdentityId id : all) CHECK(identity_from_name(identity_name(id)) == id);
    CHECK_THROWS_AS(identity_from_name("nonsense"), config_error);
}

TEST_CASE("ow at k=(2) is the classical zeta*(1,2) = 2 zeta(3)") {
    IdentityCase c = base_case(IdentityId::OW);
    c.k = Composition({2});
    c.policy = TruncationPolicy(1 << 15, 1e-10, 8);
    Residual r = verify_numeric(c);
    CHECK(r.pass);
    CHECK(r.abs_diff < 1e-10);
    CHECK(r.lhs.re().to_double() == doctest::Approx(2.4041138063191886).epsilon(1e-12));
}

TEST_CASE("hypothesis validation names the violated clause") {
    IdentityCase c = base_case(IdentityId::OW);
    c.k = Composition({1});  // weight == depth
    CHECK_THROWS_WITH_AS(verify_numeric(c), doctest::Contains("k != d"), contract_error);

    IdentityCase m = base_case(IdentityId::MAIN);
    m.k = Composition({1, 2});
    set_real_point(m);
    CHECK_THROWS_WITH_AS(verify_numeric(m), doctest::Contains("maximal height"), contract_error);

    IdentityCase t = base_case(IdentityId::TRANS1);
    t.k = Composition({3, 3});
    t.j = 2;  // j > k-2
    set_real_point(t);
    CHECK_THROWS_WITH_AS(verify_numeric(t), doctest::Contains("j <= k-2"), contract_error);

    IdentityCase l = base_case(IdentityId::LEMMA31);
    l.m = 3;
    l.n = 1;
    set_real_point(l);
    CHECK_THROWS_AS(verify_numeric(l), contract_error);
}

TEST_CASE("exact and numeric ids cannot be cross-dispatched") {
    IdentityCase c = base_case(IdentityId::REC1);
    set_rational_point(c);
    c.m = 3;
    CHECK_THROWS_AS(verify_numeric(c), contract_error);

    IdentityCase o = base_case(IdentityId::OW);
    o.k = Composition({2});
    CHECK_THROWS_AS(verify_exact(o), contract_error);
}

TEST_CASE("verify_exact requires the rational backend") {
    IdentityCase c = base_case(IdentityId::REC3);
    set_real_point(c);
    c.m = 4;
    CHECK_THROWS_AS(verify_exact(c), contract_error);
}

TEST_CASE("exact identities hold on sampled rational points") {
    IdentityCase rec = base_case(IdentityId::REC1);
    set_rational_point(rec);
    for (long m : {0L, 1L, 5L, 7L, 25L}) {
        rec.m = m;
        for (IdentityId id : {IdentityId::REC1, IdentityId::REC2, IdentityId::REC3,
                              IdentityId::PI_G}) {
            rec.id = id;
            CHECK(verify_exact(rec).ok);
        }
    }

    IdentityCase dec = base_case(IdentityId::DEC1);
    dec.alpha = ComplexValue(Rational(1, 2), Rational());
    dec.beta = ComplexValue(Rational(1, 3), Rational());
    dec.l = 3;
    dec.m = 1;
    CHECK(verify_exact(dec).ok);
    dec.id = IdentityId::DEC2;
    dec.gamma = ComplexValue(Rational(9, 10), Rational());
    CHECK(verify_exact(dec).ok);

    IdentityCase fin = base_case(IdentityId::BETA_GAMMA_FINITE);
    fin.alpha = ComplexValue(Rational(2, 5), Rational());
    fin.beta = ComplexValue(Rational(1), Rational());
    for (long n : {0L, 1L, 6L, 20L}) {
        fin.n = n;
        CHECK(verify_exact(fin).ok);
    }

    IdentityCase hr = base_case(IdentityId::H_REMARK);
    set_rational_point(hr);
    hr.k = Composition({1, 3});
    hr.M = 12;
    CHECK(verify_exact(hr).ok);

    IdentityCase set = base_case(IdentityId::SET2);
    set.d = 4;
    set.N = 3;
    CHECK(verify_exact(set).ok);
}

TEST_CASE("exact identities hold for gaussian-rational parameters too") {
    IdentityCase c = base_case(IdentityId::REC2);
    c.alpha = ComplexValue(Rational(1, 2), Rational(1, 3));
    c.beta = ComplexValue(Rational(3, 2), Rational(-1, 7));
    c.gamma = ComplexValue(Rational(4, 5), Rational(1, 9));
    c.m = 9;
    CHECK(verify_exact(c).ok);
    c.id = IdentityId::REC3;
    CHECK(verify_exact(c).ok);
}

TEST_CASE("cyclic invariance: rotated compositions give the same left side") {
    IdentityCase a = base_case(IdentityId::OW);
    a.k = Composition({2, 3});
    a.policy = TruncationPolicy(1 << 14, 1e-8, 7);
    Residual ra = verify_numeric(a);
    IdentityCase b = a;
    b.k = Composition({3, 2});
    Residual rb = verify_numeric(b);
    CHECK(std::fabs(ra.lhs.re().to_double() - rb.lhs.re().to_double()) <=
          10 * (ra.combined_err + rb.combined_err) + 1e-15);

    IdentityCase ma = base_case(IdentityId::MAIN);
    ma.k = Composition({2, 3});
    set_real_point(ma);
    ma.policy = TruncationPolicy(1 << 14, 1e-8, 7);
    Residual rma = verify_numeric(ma);
    IdentityCase mb = ma;
    mb.k = Composition({3, 2});
    Residual rmb = verify_numeric(mb);
    CHECK(std::fabs(rma.lhs.re().to_double() - rmb.lhs.re().to_double()) <=
          10 * (rma.combined_err + rmb.combined_err) + 1e-15);

    IdentityCase ia = base_case(IdentityId::IGARASHI);
    ia.k = Composition({2, 3});
    ia.alpha = ComplexValue(BigFloat(0.7, 256));
    ia.beta = ComplexValue(BigFloat(1.3, 256));
    ia.policy = TruncationPolicy(1 << 14, 1e-8, 7);
    Residual ria = verify_numeric(ia);
    IdentityCase ib = ia;
    ib.k = Composition({3, 2});
    Residual rib = verify_numeric(ib);
    CHECK(std::fabs(ria.lhs.re().to_double() - rib.lhs.re().to_double()) <=
          10 * (ria.combined_err + rib.combined_err) + 1e-15);
}

TEST_CASE("igarashi at alpha=beta=1 recovers the classical formula") {
    IdentityCase ig = base_case(IdentityId::IGARASHI);
    ig.k = Composition({2, 2});
    ig.alpha = ComplexValue(BigFloat(1.0, 256));
    ig.beta = ComplexValue(BigFloat(1.0, 256));
    ig.policy = TruncationPolicy(1 << 14, 1e-8, 7);
    Residual ri = verify_numeric(ig);
    CHECK(ri.pass);

    IdentityCase ow = base_case(IdentityId::OW);
    ow.k = Composition({2, 2});
    ow.policy = ig.policy;
    Residual ro = verify_numeric(ow);
    CHECK(std::fabs(ri.lhs.re().to_double() - ro.lhs.re().to_double()) <=
          10 * (ri.combined_err + ro.combined_err) + 1e-15);
    CHECK(std::fabs(ri.rhs.re().to_double() - ro.rhs.re().to_double()) <=
          10 * (ri.combined_err + ro.combined_err) + 1e-15);
}

TEST_CASE("transport with an empty inner composition") {
    // d = 0: H(j+1, k-j) relates depth-2 sums only.
    IdentityCase c = base_case(IdentityId::TRANS1);
    c.k = Composition({3});
    c.j = 0;
    set_real_point(c);
    c.policy = TruncationPolicy(1 << 11, 1e-7, 4);
    Residual r = verify_numeric(c);
    CHECK(r.pass);

    IdentityCase t3 = base_case(IdentityId::TRANS3);
    t3.k = Composition({3});
    set_real_point(t3);
    t3.policy = c.policy;
    CHECK(verify_numeric(t3).pass);
}

TEST_CASE("trans2 telescopes trans1 over j") {
    // Residual(trans2) is bounded by the accumulated trans1 residuals.
    const long prec = 256;
    TruncationPolicy pol(1 << 11, 1e-7, 4, prec);
    IdentityCase t2 = base_case(IdentityId::TRANS2);
    t2.k = Composition({4, 2});
    set_real_point(t2);
    t2.policy = pol;
    Residual r2 = verify_numeric(t2);
    CHECK(r2.pass);

    double acc_diff = 0, acc_err = 0;
    for (long j = 0; j <= 1; ++j) {  // k-3 = 1
        IdentityCase t1 = base_case(IdentityId::TRANS1);
        t1.k = Composition({4, 2});
        t1.j = j;
        set_real_point(t1);
        t1.policy = pol;
        Residual r1 = verify_numeric(t1);
        CHECK(r1.pass);
        acc_diff += r1.abs_diff;
        acc_err += r1.combined_err;
    }
    CHECK(r2.abs_diff <= acc_diff + acc_err + 10 * r2.combined_err);
}

TEST_CASE("the pass rule is abs_diff <= max(eps, 10*err); eps must be positive") {
    IdentityCase c = base_case(IdentityId::OW);
    c.k = Composition({2});
    c.policy = TruncationPolicy(1 << 12, 1e-4, 4);
    Residual r = verify_numeric(c);
    CHECK(r.pass == (r.abs_diff <= std::max(1e-4, 10 * r.combined_err)));
    CHECK(r.abs_diff > 0);  // finite budget: the residual is never exactly zero
    CHECK_THROWS_AS(TruncationPolicy(1 << 12, 0.0, 4), contract_error);

    IdentityCase e = base_case(IdentityId::REC2);
    set_rational_point(e);
    e.m = 2;
    CHECK(verify_exact(e).ok);  // exactness is tolerance-free
}

TEST_CASE("suite runs selected subsets and reports stable records") {
    SuiteConfig cfg;
    cfg.only = {IdentityId::SET1, IdentityId::SET2, IdentityId::SET3};
    Report rep = run_suite(cfg);
    CHECK(rep.records.size() == 3);
    CHECK(rep.overall_pass);
    for (const auto& r : rep.records) CHECK(r.exact);

    SuiteConfig bad;
    bad.only = {};
    CHECK_NOTHROW(default_suite_items(bad));
}

TEST_CASE("suite covers every identity at least once") {
    SuiteConfig cfg;
    auto items = default_suite_items(cfg);
    std::set<IdentityId> seen;
    for (const auto& it : items) seen.insert(it.id);
    CHECK(seen.size() == list_identities().size());
}

TEST_CASE("parallel and serial suite runs agree modulo timing") {
    SuiteConfig cfg;
    cfg.only = {IdentityId::SET1, IdentityId::SET2, IdentityId::SET3, IdentityId::REC1,
                IdentityId::DEC1};
    cfg.jobs = 1;
    Report serial = run_suite(cfg);
    cfg.jobs = 2;
    Report parallel = run_suite(cfg);
    REQUIRE(serial.records.size() == parallel.records.size());
    for (std::size_t i = 0; i < serial.records.size(); ++i) {
        CHECK(serial.records[i].key == parallel.records[i].key);
        CHECK(serial.records[i].pass == parallel.records[i].pass);
        CHECK(serial.records[i].lhs == parallel.records[i].lhs);
        CHECK(serial.records[i].terms == parallel.records[i].terms);
    }
}
