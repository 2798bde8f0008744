#ifndef MZV_SUITE_HPP
#define MZV_SUITE_HPP

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>

#include "mzv/identities.hpp"

namespace mzv {

struct SuiteConfig {
    std::vector<IdentityId> only;            // empty = every identity
    std::optional<TruncationPolicy> policy;  // override for numeric cases
    int jobs = 1;
    unsigned long long seed = 20240814;
    int exact_triples = 20;  // random rational triples per exact identity
    long exact_m_max = 20;
    long exact_n_max = 10;
    long exact_trunc = 10;   // truncation for the exact H comparison
};

struct CaseRecord {
    IdentityId id{};
    std::string key;
    bool exact = false;
    bool pass = false;
    std::string k;
    std::string alpha, beta, gamma;
    std::string aux;
    std::string lhs, rhs;
    double abs_diff = 0.0;
    double err_bound = 0.0;
    long terms = 0;
    double time_ms = 0.0;
    std::string note;
};

struct Report {
    std::vector<CaseRecord> records;
    bool overall_pass = false;
    int passed = 0, failed = 0;
};

namespace detail {

// Deterministic xorshift; the suite's exact grids must not depend on the
// platform's RNG.
class SplitMix {
public:
    explicit SplitMix(unsigned long long seed) : s_(seed) {}
    unsigned long long next() {
        unsigned long long z = (s_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(next() % static_cast<unsigned long long>(hi - lo + 1));
    }

private:
    unsigned long long s_;
};

inline Rational random_param_component(SplitMix& rng) {
    long num = rng.range(-96, 96);
    long den = rng.range(1, 64);
    return Rational(num, static_cast<unsigned long>(den));
}

inline bool valid_rational_param(const Rational& q) { return !q.is_nonpositive_integer(); }

// A random triple with every constraint of the series parameters enforced.
inline std::array<Rational, 3> random_rational_triple(SplitMix& rng) {
    for (;;) {
        Rational a = random_param_component(rng);
        Rational b = random_param_component(rng);
        Rational g = random_param_component(rng);
        if (!valid_rational_param(a) || !valid_rational_param(b) || !valid_rational_param(g))
            continue;
        if (!((a + b - g) > Rational(0))) continue;
        return {a, b, g};
    }
}

// Random two-parameter pair: Re(alpha) > 0, beta not a nonpositive integer.
inline std::array<Rational, 2> random_rational_pair(SplitMix& rng) {
    for (;;) {
        Rational a = random_param_component(rng);
        Rational b = random_param_component(rng);
        if (!(a > Rational(0)) || !valid_rational_param(b)) continue;
        return {a, b};
    }
}

struct SuiteItem {
    IdentityId id;
    std::string key;
    std::function<CaseRecord()> run;
};

inline ComplexValue cv_rat(const Rational& q) { return ComplexValue(q, Rational()); }

inline std::string format_cv(const ComplexValue& v, std::size_t digits) {
    return format_number(v, digits);
}

inline CaseRecord run_numeric_record(const IdentityCase& c, const std::string& key,
                                     const std::string& aux) {
    CaseRecord rec;
    rec.id = c.id;
    rec.key = key;
    rec.exact = false;
    rec.aux = aux;
    if (c.k) rec.k = c.k->to_string();
    std::size_t digits = static_cast<std::size_t>(
        std::max<long>(20, static_cast<long>(0.302 * c.policy.precision_bits)));
    if (c.alpha) rec.alpha = format_cv(*c.alpha, 17);
    if (c.beta) rec.beta = format_cv(*c.beta, 17);
    if (c.gamma) rec.gamma = format_cv(*c.gamma, 17);
    try {
        Residual r = verify_numeric(c);
        rec.pass = r.pass;
        rec.lhs = format_cv(r.lhs, digits);
        rec.rhs = format_cv(r.rhs, digits);
        rec.abs_diff = r.abs_diff;
        rec.err_bound = r.combined_err;
        rec.terms = r.terms;
        rec.time_ms = r.time_ms;
    } catch (const std::exception& e) {
        rec.pass = false;
        rec.note = e.what();
    }
    return rec;
}

}  // namespace detail

// The default per-identity case grids: at least one case per identity,
// policies sized so the whole suite stays interactive.
inline std::vector<detail::SuiteItem> default_suite_items(const SuiteConfig& cfg) {
    using detail::SuiteItem;
    std::vector<SuiteItem> items;

    const long prec = cfg.policy ? cfg.policy->precision_bits : kDefaultPrecisionBits;
    auto pol = [&](long m, double eps, int levels) {
        if (cfg.policy) return *cfg.policy;
        return TruncationPolicy(m, eps, levels, prec);
    };
    // The transport relations evaluate H: quadratic cost, so an overriding
    // policy is capped at the kernel budget.
    auto pol_kernel = [&](long m, double eps, int levels) {
        TruncationPolicy p = pol(m, eps, levels);
        const long cap = 1L << 12;
        if (p.max_terms > cap) {
            int lv = p.levels;
            while (lv > 1 && cap < (1L << lv)) --lv;
            p = TruncationPolicy(cap, p.target_eps, lv, p.precision_bits);
        }
        return p;
    };
    auto real_pt = [&](IdentityCase& c) {
        c.alpha = ComplexValue(BigFloat(0.7, prec));
        c.beta = ComplexValue(BigFloat(1.3, prec));
        c.gamma = ComplexValue(BigFloat(0.9, prec));
    };
    auto complex_pt = [&](IdentityCase& c) {
        c.alpha = ComplexValue(BigFloat(0.5, prec), BigFloat(0.2, prec));
        c.beta = ComplexValue(BigFloat(1.1, prec), BigFloat(-0.1, prec));
        c.gamma = ComplexValue(BigFloat(0.8, prec));
    };
    auto push_numeric = [&](IdentityCase c, const std::string& key, const std::string& aux) {
        items.push_back(SuiteItem{c.id, key, [c, key, aux] {
                                      return detail::run_numeric_record(c, key, aux);
                                  }});
    };

    // --- cyclic sum formulas ---
    for (const char* ks : {"2", "3"}) {
        IdentityCase c;
        c.id = IdentityId::OW;
        c.k = Composition::from_string(ks);
        c.policy = pol(1L << 15, 1e-10, 8);
        push_numeric(c, "ow|" + std::string(ks), "");
    }
    {
        IdentityCase c;
        c.id = IdentityId::IGARASHI;
        c.k = Composition({2, 2});
        real_pt(c);
        c.gamma.reset();
        c.policy = pol(1L << 16, 1e-8, 8);
        push_numeric(c, "igarashi|2,2", "");
    }
    {
        IdentityCase c;
        c.id = IdentityId::MAIN;
        c.k = Composition({2, 2});
        real_pt(c);
        c.policy = pol(1L << 15, 1e-8, 8);
        push_numeric(c, "main|2,2|real", "");
        IdentityCase c2;
        c2.id = IdentityId::MAIN;
        c2.k = Composition({2});
        complex_pt(c2);
        c2.policy = pol(1L << 14, 1e-8, 7);
        push_numeric(c2, "main|2|complex", "");
    }
    {
        IdentityCase c;
        c.id = IdentityId::RHS_COLLAPSE;
        c.k = Composition({2, 3});
        real_pt(c);
        c.gamma.reset();
        c.policy = pol(1L << 14, 1e-10, 7);
        push_numeric(c, "rhs_collapse|2,3", "");
    }
    {
        IdentityCase c;
        c.id = IdentityId::Z2_Z1_BRIDGE;
        c.k = Composition({2, 2});
        c.alpha = ComplexValue(BigFloat(1.3, prec));
        c.beta = ComplexValue(BigFloat(0.7, prec));
        c.policy = pol(1L << 16, 1e-8, 9);
        push_numeric(c, "z2_z1_bridge|2,2", "");
    }
    {
        IdentityCase c;
        c.id = IdentityId::LEMMA31;
        c.m = 1;
        c.n = 2;
        real_pt(c);
        c.policy = pol(1L << 14, 1e-10, 7);
        push_numeric(c, "lemma31|m=1,n=2", "m=1;n=2");
        IdentityCase c2 = c;
        c2.id = IdentityId::LEMMA32;
        c2.m = 2;
        c2.n = 4;
        push_numeric(c2, "lemma32|m=2,n=4", "m=2;n=4");
    }
    {
        IdentityCase c;
        c.id = IdentityId::TRANS1;
        c.k = Composition({3, 3});
        c.j = 0;
        real_pt(c);
        c.policy = pol_kernel(1L << 12, 1e-8, 5);
        push_numeric(c, "trans1|3,3|j=0", "j=0");
        IdentityCase c2;
        c2.id = IdentityId::TRANS2;
        c2.k = Composition({4, 2});
        real_pt(c2);
        c2.policy = pol_kernel(1L << 12, 1e-8, 5);
        push_numeric(c2, "trans2|4,2", "");
        IdentityCase c3;
        c3.id = IdentityId::TRANS3;
        c3.k = Composition({3, 3});
        real_pt(c3);
        c3.policy = pol_kernel(1L << 12, 1e-8, 5);
        push_numeric(c3, "trans3|3,3", "");
    }

    // --- exact identities over seeded random grids ---
    auto push_exact_grid = [&](IdentityId id, const std::string& key, const std::string& aux,
                               std::function<ExactResult(detail::SplitMix&)> grid) {
        unsigned long long seed = cfg.seed ^ (0x1000ull + static_cast<unsigned long long>(id));
        items.push_back(SuiteItem{id, key, [id, key, aux, grid, seed] {
                                      CaseRecord rec;
                                      rec.id = id;
                                      rec.key = key;
                                      rec.exact = true;
                                      rec.aux = aux;
                                      auto start = std::chrono::steady_clock::now();
                                      try {
                                          detail::SplitMix rng(seed);
                                          ExactResult r = grid(rng);
                                          rec.pass = r.ok;
                                          rec.note = r.witness;
                                          rec.terms = r.cases_checked;
                                      } catch (const std::exception& e) {
                                          rec.pass = false;
                                          rec.note = e.what();
                                      }
                                      rec.time_ms =
                                          std::chrono::duration<double, std::milli>(
                                              std::chrono::steady_clock::now() - start)
                                              .count();
                                      return rec;
                                  }});
    };

    const int triples = cfg.exact_triples;
    const long m_max = cfg.exact_m_max;
    const long n_max = cfg.exact_n_max;
    const long trunc = cfg.exact_trunc;

    auto triple_case = [](IdentityId id, const std::array<Rational, 3>& t) {
        IdentityCase c;
        c.id = id;
        c.alpha = detail::cv_rat(t[0]);
        c.beta = detail::cv_rat(t[1]);
        c.gamma = detail::cv_rat(t[2]);
        return c;
    };

    for (IdentityId id : {IdentityId::REC1, IdentityId::REC2, IdentityId::REC3}) {
        push_exact_grid(id, identity_name(id) + "|grid",
                        "triples=" + std::to_string(triples) + ";m<=" + std::to_string(m_max),
                        [=](detail::SplitMix& rng) {
                            ExactResult agg;
                            agg.ok = true;
                            for (int i = 0; i < triples; ++i) {
                                auto t = detail::random_rational_triple(rng);
                                for (long m : {0L, 1L, 2L, 3L, 5L, 8L, 13L, m_max}) {
                                    IdentityCase c = triple_case(id, t);
                                    c.m = m;
                                    ExactResult r = verify_exact(c);
                                    agg.cases_checked += r.cases_checked;
                                    if (!r.ok) return r;
                                }
                            }
                            return agg;
                        });
    }
    push_exact_grid(IdentityId::DEC1, "dec1|grid",
                    "triples=" + std::to_string(triples),
                    [=](detail::SplitMix& rng) {
                        ExactResult agg;
                        agg.ok = true;
                        const std::pair<long, long> lm[] = {{1, 0}, {3, 1}, {10, 4}, {25, 7}};
                        for (int i = 0; i < triples; ++i) {
                            auto t = detail::random_rational_triple(rng);
                            for (auto [l, m] : lm) {
                                IdentityCase c = triple_case(IdentityId::DEC1, t);
                                c.l = l;
                                c.m = m;
                                ExactResult r = verify_exact(c);
                                agg.cases_checked += r.cases_checked;
                                if (!r.ok) return r;
                            }
                        }
                        return agg;
                    });
    push_exact_grid(IdentityId::DEC2, "dec2|grid",
                    "triples=" + std::to_string(triples),
                    [=](detail::SplitMix& rng) {
                        ExactResult agg;
                        agg.ok = true;
                        const std::pair<long, long> lm[] = {{0, 0}, {3, 1}, {10, 4}, {25, 25}};
                        for (int i = 0; i < triples; ++i) {
                            auto t = detail::random_rational_triple(rng);
                            for (auto [l, m] : lm) {
                                IdentityCase c = triple_case(IdentityId::DEC2, t);
                                c.l = l;
                                c.m = m;
                                ExactResult r = verify_exact(c);
                                agg.cases_checked += r.cases_checked;
                                if (!r.ok) return r;
                            }
                        }
                        return agg;
                    });
    push_exact_grid(IdentityId::PI_G, "pi_g|grid",
                    "triples=" + std::to_string(triples) + ";m<=" + std::to_string(m_max),
                    [=](detail::SplitMix& rng) {
                        ExactResult agg;
                        agg.ok = true;
                        for (int i = 0; i < triples; ++i) {
                            auto t = detail::random_rational_triple(rng);
                            for (long m : {0L, 1L, 4L, 9L, m_max}) {
                                IdentityCase c = triple_case(IdentityId::PI_G, t);
                                c.m = m;
                                ExactResult r = verify_exact(c);
                                agg.cases_checked += r.cases_checked;
                                if (!r.ok) return r;
                            }
                        }
                        return agg;
                    });
    push_exact_grid(IdentityId::BETA_GAMMA_FINITE, "beta_gamma_finite|grid",
                    "triples=" + std::to_string(triples) + ";n<=" + std::to_string(n_max),
                    [=](detail::SplitMix& rng) {
                        ExactResult agg;
                        agg.ok = true;
                        for (int i = 0; i < triples; ++i) {
                            auto pr = detail::random_rational_pair(rng);
                            for (long n = 0; n <= n_max; ++n) {
                                IdentityCase c;
                                c.id = IdentityId::BETA_GAMMA_FINITE;
                                c.alpha = detail::cv_rat(pr[0]);
                                c.beta = detail::cv_rat(pr[1]);
                                c.n = n;
                                ExactResult r = verify_exact(c);
                                agg.cases_checked += r.cases_checked;
                                if (!r.ok) return r;
                            }
                        }
                        return agg;
                    });
    for (IdentityId id : {IdentityId::SET1, IdentityId::SET2, IdentityId::SET3}) {
        push_exact_grid(id, identity_name(id) + "|grid", "d=2..5;N=0..6",
                        [id](detail::SplitMix&) {
                            ExactResult agg;
                            agg.ok = true;
                            for (long d = 2; d <= 5; ++d)
                                for (long N = 0; N <= 6; ++N) {
                                    IdentityCase c;
                                    c.id = id;
                                    c.d = d;
                                    c.N = N;
                                    ExactResult r = verify_exact(c);
                                    agg.cases_checked += 1;
                                    if (!r.ok) {
                                        r.witness += " (d=" + std::to_string(d) +
                                                     ", N=" + std::to_string(N) + ")";
                                        return r;
                                    }
                                }
                            return agg;
                        });
    }
    push_exact_grid(IdentityId::H_REMARK, "h_remark|grid",
                    "M=" + std::to_string(trunc),
                    [=](detail::SplitMix& rng) {
                        ExactResult agg;
                        agg.ok = true;
                        int nt = std::min(triples, 5);
                        for (int i = 0; i < nt; ++i) {
                            auto t = detail::random_rational_triple(rng);
                            for (const char* ks : {"1,3", "2,2", "1,2,2"}) {
                                IdentityCase c = triple_case(IdentityId::H_REMARK, t);
                                c.k = Composition::from_string(ks);
                                c.M = trunc;
                                ExactResult r = verify_exact(c);
                                agg.cases_checked += r.cases_checked;
                                if (!r.ok) return r;
                            }
                        }
                        return agg;
                    });

    return items;
}

// Runs the selected identities' default cases, optionally on several worker
// threads. The report is sorted by (identity, case key), so parallel and
// serial runs produce the same records.
inline Report run_suite(const SuiteConfig& cfg) {
    std::vector<detail::SuiteItem> items = default_suite_items(cfg);
    if (!cfg.only.empty()) {
        std::vector<detail::SuiteItem> filtered;
        for (auto& it : items)
            for (IdentityId id : cfg.only)
                if (it.id == id) {
                    filtered.push_back(std::move(it));
                    break;
                }
        items = std::move(filtered);
        if (items.empty()) throw config_error("identity filter matched no cases");
    }

    std::vector<CaseRecord> records(items.size());
    const int jobs = std::max(1, cfg.jobs);
    if (jobs == 1) {
        for (std::size_t i = 0; i < items.size(); ++i) records[i] = items[i].run();
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= items.size()) return;
                records[i] = items[i].run();
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::stable_sort(records.begin(), records.end(), [](const CaseRecord& a, const CaseRecord& b) {
        if (a.id != b.id) return static_cast<int>(a.id) < static_cast<int>(b.id);
        return a.key < b.key;
    });

    Report rep;
    rep.records = std::move(records);
    rep.passed = 0;
    rep.failed = 0;
    for (const auto& r : rep.records) (r.pass ? rep.passed : rep.failed)++;
    rep.overall_pass = rep.failed == 0;
    return rep;
}

}  // namespace mzv

#endif
