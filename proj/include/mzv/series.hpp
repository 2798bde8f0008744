#ifndef MZV_SERIES_HPP
#define MZV_SERIES_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "mzv/chain.hpp"
#include "mzv/extrapolate.hpp"

namespace mzv {

// ---------------------------------------------------------------------------
// Pointwise building blocks
// ---------------------------------------------------------------------------

// Rising factorial (x)_m = x (x+1) ... (x+m-1); exact under the rational
// backend, (x)_0 = 1.
inline ComplexValue pochhammer(const ComplexValue& x, long m,
                               long precision = kDefaultPrecisionBits) {
    if (m < 0) throw contract_error("pochhammer requires m >= 0");
    if (x.backend() == Backend::RATIONAL) {
        if (x.is_real())
            return ring::to_value(detail::pochhammer_t(x.crational().re, m, precision));
        return ring::to_value(detail::pochhammer_t(x.crational(), m, precision));
    }
    if (x.is_real()) return ring::to_value(detail::pochhammer_t(x.cbigfloat().re, m, precision));
    return ring::to_value(detail::pochhammer_t(x.to_cbf(precision), m, precision));
}

namespace detail {

template <typename S>
S g_factor_t(const ParamSet<S>& ps, long m, int eps, int eps2) {
    if (m == -1) return ring::make_zero<S>(ps.prec);
    return pochhammer_t(ps.alpha, m + eps, ps.prec) * pochhammer_t(ps.beta, m + eps2, ps.prec) /
           (pochhammer_t(ps.gamma, m, ps.prec) * factorial_t<S>(m, ps.prec));
}

template <typename S>
S pi_weight_t(const ParamSet<S>& ps, const std::vector<long>& tuple, const Composition& k) {
    S acc = ring::make_one<S>(ps.prec);
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        long m = tuple[i];
        acc = acc / (ring::shifted(ps.alpha, m) * ring::shifted(ps.beta, m));
        int e = k.parts()[i] - 2;
        if (e != 0) acc = acc / ring::pow_i(ring::shifted(ps.gamma, m), e);
    }
    return acc;
}

template <typename Fn>
void dispatch_ring(const ParameterTriple& p, long prec, Fn&& fn) {
    const bool real = p.all_real();
    if (p.backend() == Backend::RATIONAL) {
        if (real)
            fn(Rational());
        else
            fn(CRational());
    } else {
        if (real)
            fn(BigFloat(prec));
        else
            fn(cbf_zero(prec));
    }
}

}  // namespace detail

// g_m^{ε,ε'} = (α)_{m+ε} (β)_{m+ε'} / ((γ)_m m!), with g_{-1} = 0.
inline ComplexValue g_factor(const ParameterTriple& p, long m, int eps, int eps2,
                             long precision = kDefaultPrecisionBits) {
    if (m < -1) throw contract_error("g factor requires m >= -1");
    if ((eps != 0 && eps != 1) || (eps2 != 0 && eps2 != 1))
        throw contract_error("g factor requires eps, eps' in {0,1}");
    ComplexValue out;
    detail::dispatch_ring(p, precision, [&](auto tag) {
        using S = decltype(tag);
        detail::ParamSet<S> ps(p, precision);
        out = ring::to_value(detail::g_factor_t(ps, m, eps, eps2));
    });
    return out;
}

// Π(m | k) = Π_i 1/((m_i+α)(m_i+β)(m_i+γ)^{k_i-2}); k_i = 1 moves the
// (m_i+γ) factor to the numerator.
inline ComplexValue pi_weight(const ParameterTriple& p, const std::vector<long>& tuple,
                              const Composition& k, long precision = kDefaultPrecisionBits) {
    if (tuple.size() != k.depth())
        throw contract_error("pi weight requires tuple length == composition depth");
    for (long m : tuple)
        if (m < 0) throw contract_error("pi weight requires indices >= 0");
    ComplexValue out;
    detail::dispatch_ring(p, precision, [&](auto tag) {
        using S = decltype(tag);
        detail::ParamSet<S> ps(p, precision);
        out = ring::to_value(detail::pi_weight_t(ps, tuple, k));
    });
    return out;
}

// ---------------------------------------------------------------------------
// Chain specs for the nested series
// ---------------------------------------------------------------------------

namespace detail {

inline ChainWeightSpec z1_star3_spec(const Composition& k, const ParameterTriple& p) {
    const std::size_t d = k.depth();
    std::vector<PositionWeight> pos(d);
    pos[0] = PositionWeight{RatioKind::G00, 1, 0, 0, k.parts()[0]};
    for (std::size_t i = 1; i < d; ++i)
        pos[i] = PositionWeight{RatioKind::None, 0, 1, 1, k.parts()[i] - 2};
    if (d == 1) {
        pos[0].ratio_pow = 0;  // head and tail ratios cancel on a single index
    } else {
        pos[d - 1].kind = RatioKind::G00;
        pos[d - 1].ratio_pow = -1;
    }
    return ChainWeightSpec(p, std::move(pos));
}

inline ChainWeightSpec z1_star2_spec(const Composition& k, const ParameterTriple& p) {
    const std::size_t d = k.depth();
    std::vector<PositionWeight> pos(d);
    pos[0] = PositionWeight{RatioKind::PochAlpha, 1, 0, k.parts()[0], 0};
    for (std::size_t i = 1; i < d; ++i)
        pos[i] = PositionWeight{RatioKind::None, 0, 1, k.parts()[i] - 1, 0};
    if (d == 1) {
        pos[0].ratio_pow = 0;
    } else {
        pos[d - 1].kind = RatioKind::PochAlpha;
        pos[d - 1].ratio_pow = -1;
    }
    return ChainWeightSpec(p, std::move(pos));
}

inline ChainWeightSpec z2_star_spec(const Composition& k, const ParameterTriple& p) {
    const std::size_t d = k.depth();
    std::vector<PositionWeight> pos(d + 1);
    pos[0] = PositionWeight{RatioKind::G00, 1, 0, 0, 0};
    for (std::size_t i = 1; i <= d; ++i)
        pos[i] = PositionWeight{RatioKind::None, 0, 1, 1, k.parts()[i - 1] - 2};
    pos[d].kind = RatioKind::G00;
    pos[d].ratio_pow = -1;
    return ChainWeightSpec(p, std::move(pos));
}

inline ChainWeightSpec z_triple_spec(const ExponentTriple& e, const ParameterTriple& p) {
    return ChainWeightSpec(p, {PositionWeight{RatioKind::None, 0, e.a, e.b, e.c}});
}

// ---------------------------------------------------------------------------
// Shared evaluation pipeline
// ---------------------------------------------------------------------------

inline constexpr long kMinExtrapolationBase = 64;
inline constexpr double kDivergenceExponent = 1.05;

// Thresholds M >> (L-1), ..., M/2, M after rounding M down to a multiple of
// 2^(L-1) and clamping L so the smallest threshold stays in the asymptotic
// regime.
inline std::vector<long> make_thresholds(const TruncationPolicy& pol, int& levels_out) {
    int levels = pol.levels;
    long m = pol.max_terms;
    while (levels > 1 && (m >> (levels - 1)) < kMinExtrapolationBase) --levels;
    long base = m >> (levels - 1);
    long top = base << (levels - 1);
    std::vector<long> th;
    th.reserve(levels);
    for (int j = levels - 1; j >= 0; --j) th.push_back(top >> j);
    levels_out = levels;
    return th;
}

struct TermProbe {
    // (m, |term_m|) samples in the last decile of the top truncation.
    std::vector<std::pair<long, double>> samples;
    std::vector<long> wanted;

    explicit TermProbe(long top) {
        for (int i = 0; i <= 8; ++i) {
            long m = static_cast<long>(std::floor(0.9 * static_cast<double>(top))) +
                     (i * (top - static_cast<long>(std::floor(0.9 * static_cast<double>(top))))) / 8;
            if (wanted.empty() || wanted.back() != m) wanted.push_back(m);
        }
    }
    bool wants(long m) const {
        return std::binary_search(wanted.begin(), wanted.end(), m);
    }
    void record(long m, double a) { samples.emplace_back(m, a); }

    // Least-squares slope of ln|term| against ln m; the decay exponent.
    std::optional<double> fitted_exponent() const {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (auto [m, a] : samples) {
            if (!(a > 0) || !std::isfinite(a)) continue;
            double x = std::log(static_cast<double>(m)), y = std::log(a);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++n;
        }
        if (n < 2) return std::nullopt;
        double denom = n * sxx - sx * sx;
        if (!(std::fabs(denom) > 0)) return std::nullopt;
        return -(n * sxy - sx * sy) / denom;
    }
};

inline void check_divergence(const TermProbe& probe, const std::string& what) {
    auto q = probe.fitted_exponent();
    if (q && *q <= kDivergenceExponent)
        throw divergence_error(what + ": terms decay like m^-" + std::to_string(*q) +
                               ", too slow to sum");
}

// Full pipeline for a plain chain series: exact truncation under the
// RATIONAL backend, guarded summation plus tail extrapolation under BIGFLOAT.
inline SeriesValue evaluate_chain_series(const ChainWeightSpec& spec, const TruncationPolicy& pol,
                                         const TailModel& model, std::size_t declared_depth,
                                         const std::string& what) {
    pol.validate();
    const long prec = pol.precision_bits;
    if (spec.params.backend() == Backend::RATIONAL) {
        SeriesValue sv;
        sv.value = chain_dp(spec, pol.max_terms, prec);
        sv.err = ErrorBound(0.0);
        sv.terms_used = pol.max_terms * static_cast<long>(declared_depth);
        sv.levels_used = 1;
        return sv;
    }
    int levels = 0;
    std::vector<long> th = make_thresholds(pol, levels);
    TermProbe probe(th.back());
    std::vector<CBigFloat> partials(th.size(), cbf_zero(prec));
    auto run = [&](auto tag) {
        using S = decltype(tag);
        chain_prefix_pass<S>(
            spec, th, prec,
            [&](std::size_t j, const S& v) { partials[j] = ring::from_value<CBigFloat>(ring::to_value(v), prec); },
            [&](long m, const S& term) {
                if (probe.wants(m)) probe.record(m, ring::abs_estimate(term));
            });
    };
    if (spec.params.all_real())
        run(BigFloat(prec));
    else
        run(cbf_zero(prec));
    check_divergence(probe, what);
    Extrapolated e = extrapolate_points(th, partials, pol, model);
    SeriesValue sv;
    sv.value = e.value.im.is_zero() ? ComplexValue(e.value.re) : ComplexValue(e.value);
    sv.err = ErrorBound(e.err);
    sv.terms_used = th.back() * static_cast<long>(declared_depth);
    sv.levels_used = e.levels_used;
    return sv;
}

inline TailModel nested_tail_model(const Composition& k, const ParameterTriple& p, long prec,
                                   bool force_log, int extra_log) {
    TailModel model;
    CBigFloat delta = p.t().to_cbf(prec);
    delta.re -= BigFloat(1L, prec);
    model.delta = delta;
    int middle_ones = 0;
    for (std::size_t i = 1; i < k.depth(); ++i)
        if (k.parts()[i] == 1) ++middle_ones;
    bool delta_small = abs_double(delta) < 0.02;
    int degree = middle_ones + ((delta_small && k.parts()[0] == 1) ? 1 : 0) + extra_log;
    model.use_log = force_log || degree > 0;
    model.max_log_degree = std::max(1, degree);
    return model;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public series
// ---------------------------------------------------------------------------

// Z(a|b|c; α,β,γ) = Σ_{n>=0} (n+α)^-a (n+β)^-b (n+γ)^-c
inline SeriesValue z_triple(const ExponentTriple& e, const ParameterTriple& p,
                            const TruncationPolicy& pol) {
    return detail::evaluate_chain_series(detail::z_triple_spec(e, p), pol, TailModel::plain(), 1,
                                         "Z(a|b|c)");
}

// Z(a|b; α,β) = Σ_{n>=0} (n+α)^-a (n+β)^-b
inline SeriesValue z_double(int a, int b, const ComplexValue& alpha, const ComplexValue& beta,
                            const TruncationPolicy& pol) {
    if (a + b < 2) throw contract_error("Z(a|b) requires a+b >= 2");
    if (!detail::re_positive(alpha)) throw contract_error("Z(a|b) requires Re(alpha) > 0");
    ParameterTriple p(alpha, beta, beta);
    ChainWeightSpec spec(p, {PositionWeight{RatioKind::None, 0, a, b, 0}});
    return detail::evaluate_chain_series(spec, pol, TailModel::plain(), 1, "Z(a|b)");
}

// Three-parameter Z_I*(k; α,β,γ).
inline SeriesValue z1_star3(const Composition& k, const ParameterTriple& p,
                            const TruncationPolicy& pol) {
    if (!k.tail_admissible())
        throw contract_error("Z_I*(k; alpha,beta,gamma) requires k_d != 1");
    TailModel model = detail::nested_tail_model(k, p, pol.precision_bits, false, 0);
    return detail::evaluate_chain_series(detail::z1_star3_spec(k, p), pol, model, k.depth(),
                                         "Z_I*(three-parameter)");
}

// Two-parameter Z_I*(k; α,β) (Igarashi's series).
inline SeriesValue z1_star2(const Composition& k, const ComplexValue& alpha,
                            const ComplexValue& beta, const TruncationPolicy& pol) {
    if (!k.tail_admissible()) throw contract_error("Z_I*(k; alpha,beta) requires k_d != 1");
    if (!detail::re_positive(alpha))
        throw contract_error("Z_I*(k; alpha,beta) requires Re(alpha) > 0");
    ParameterTriple p(alpha, beta, beta);  // t = alpha, so the lattice offset is alpha-1
    TailModel model = detail::nested_tail_model(k, p, pol.precision_bits, false, 0);
    return detail::evaluate_chain_series(detail::z1_star2_spec(k, p), pol, model, k.depth(),
                                         "Z_I*(two-parameter)");
}

// ζ*(k) = Z_I*(k; 1, 1).
inline SeriesValue zeta_star(const Composition& k, const TruncationPolicy& pol) {
    ComplexValue one(BigFloat(1L, pol.precision_bits));
    return z1_star2(k, one, one, pol);
}

// Z_II*(k; α,β,γ), the auxiliary (d+1)-fold sum; all parts must be >= 2.
inline SeriesValue z2_star(const Composition& k, const ParameterTriple& p,
                           const TruncationPolicy& pol) {
    if (!k.maximal_height())
        throw contract_error("Z_II*(k; alpha,beta,gamma) requires every part >= 2");
    TailModel model = detail::nested_tail_model(k, p, pol.precision_bits, false, 0);
    return detail::evaluate_chain_series(detail::z2_star_spec(k, p), pol, model, k.depth(),
                                         "Z_II*");
}

namespace detail {

// Σ_{l > n} [1/(l-m)] / g_l^{1,1} computed with an incremental g ratio;
// `kernel_m` < 0 drops the 1/(l-m) factor. Shared by F and the lemma tails.
inline SeriesValue g11_reciprocal_sum(const ParameterTriple& p, long n, long kernel_m,
                                      const TruncationPolicy& pol, const std::string& what) {
    pol.validate();
    const long prec = pol.precision_bits;
    SeriesValue out;
    detail::dispatch_ring(p, prec, [&](auto tag) {
        using S = decltype(tag);
        detail::ParamSet<S> ps(p, prec);
        const bool rational = std::is_same_v<S, Rational> || std::is_same_v<S, CRational>;
        int levels = 0;
        std::vector<long> th;
        if (rational) {
            levels = 1;
            th = {pol.max_terms};
        } else {
            th = make_thresholds(pol, levels);
        }
        TermProbe probe(th.back());
        std::vector<S> partials(th.size(), ring::make_zero<S>(prec));
        S g11 = detail::g_factor_t(ps, n + 1, 1, 1);
        S acc = ring::make_zero<S>(prec);
        std::size_t next = 0;
        for (long c = 1; c <= th.back(); ++c) {
            long l = n + c;
            // g11 currently holds g_l^{1,1}.
            S term = ring::one_like(g11) / g11;
            if (kernel_m >= 0)
                term = term / ring::shifted(ring::make_zero<S>(prec), l - kernel_m);
            acc += term;
            if (!rational && probe.wants(c)) probe.record(c, ring::abs_estimate(term));
            while (next < th.size() && th[next] == c) {
                partials[next] = acc;
                ++next;
            }
            g11 = g11 * (ring::shifted(ps.alpha, l + 1) * ring::shifted(ps.beta, l + 1)) /
                  (ring::shifted(ps.gamma, l) * ring::shifted(ring::make_zero<S>(prec), l + 1));
        }
        if (rational) {
            out.value = ring::to_value(partials[0]);
            out.err = ErrorBound(0.0);
            out.terms_used = th.back();
            out.levels_used = 1;
            return;
        }
        check_divergence(probe, what);
        TailModel model;
        CBigFloat delta = p.t().to_cbf(prec);
        delta.re -= BigFloat(1L, prec);
        model.delta = delta;
        std::vector<CBigFloat> ps2;
        ps2.reserve(partials.size());
        for (const S& v : partials) ps2.push_back(ring::from_value<CBigFloat>(ring::to_value(v), prec));
        Extrapolated e = extrapolate_points(th, ps2, pol, model);
        out.value = e.value.im.is_zero() ? ComplexValue(e.value.re) : ComplexValue(e.value);
        out.err = ErrorBound(e.err);
        out.terms_used = th.back();
        out.levels_used = e.levels_used;
    });
    return out;
}

}  // namespace detail

// F_{m,n} = g_m^{1,1} Σ_{l>n} 1/((l-m) g_l^{1,1}), for 0 <= m <= n.
inline SeriesValue f_sum(long m, long n, const ParameterTriple& p, const TruncationPolicy& pol) {
    if (m < 0 || n < 0) throw contract_error("F_{m,n} requires m, n >= 0");
    if (m > n) throw contract_error("F_{m,n} requires m <= n");
    SeriesValue tail = detail::g11_reciprocal_sum(p, n, m, pol, "F_{m,n}");
    ComplexValue gm = g_factor(p, m, 1, 1, pol.precision_bits);
    SeriesValue out;
    out.value = gm * tail.value;
    double scale = 1.0;
    if (gm.backend() == Backend::RATIONAL) {
        double r = gm.crational().re.to_double(), i = gm.crational().im.to_double();
        scale = std::sqrt(r * r + i * i);
    } else {
        scale = abs_double(gm.cbigfloat());
    }
    out.err = tail.err.scaled(scale);
    out.terms_used = tail.terms_used;
    out.levels_used = tail.levels_used;
    return out;
}

// Σ_{l > n} 1/g_l^{1,1}; the tail appearing in the two lemmas.
inline SeriesValue g11_tail(const ParameterTriple& p, long n, const TruncationPolicy& pol) {
    if (n < -1) throw contract_error("g11 tail requires n >= -1");
    return detail::g11_reciprocal_sum(p, n, -1, pol, "sum of 1/g^{1,1}");
}

// ---------------------------------------------------------------------------
// H: the connected sum with the 1/(m_d - m_1) kernel
// ---------------------------------------------------------------------------

namespace detail {

inline constexpr long kHSumMaxTruncation = 1 << 14;

template <typename S>
struct HPrefixes {
    // P2[m] = Σ_{m'<=m} w_2(m'), and for depth 4 also
    // P3[m] = Σ w_3, Q[m] = Σ w_3(m') P2[m'].
    std::vector<S> p2, p3, q;
};

}  // namespace detail

// H(k_1,...,k_d): sum over chains with m_1 < m_d of
//   g_{m_1}^{0,0}/g_{m_d}^{0,0} (m_1+γ)^{-(k_1-1)} Π(m_2..m_d | k_2..k_d) / (m_d - m_1).
// Evaluated by an outer loop over m_d with O(1) inner lookups (depth <= 4)
// or an incremental middle chain (depth >= 5): O(M^2 d) worst case.
inline SeriesValue h_sum(const Composition& k, const ParameterTriple& p,
                         const TruncationPolicy& pol) {
    const std::size_t d = k.depth();
    if (d < 2) throw contract_error("H requires depth >= 2");
    bool some_ge2 = false;
    for (int part : k.parts()) some_ge2 = some_ge2 || part >= 2;
    if (!some_ge2) throw contract_error("H requires some part >= 2");
    pol.validate();
    if (pol.max_terms > detail::kHSumMaxTruncation)
        throw resource_error("H truncation limited to " +
                             std::to_string(detail::kHSumMaxTruncation) +
                             " (quadratic-cost kernel)");
    const long prec = pol.precision_bits;
    const bool rational = p.backend() == Backend::RATIONAL;

    SeriesValue out;
    detail::dispatch_ring(p, prec, [&](auto tag) {
        using S = decltype(tag);
        detail::ParamSet<S> ps(p, prec);
        int levels = 0;
        std::vector<long> th;
        if (rational) {
            levels = 1;
            th = {pol.max_terms};
        } else {
            th = detail::make_thresholds(pol, levels);
        }
        const long top = th.back();

        // Endpoint weight tables.
        std::vector<S> w1, wd, inv_gap;
        w1.reserve(top + 1);
        wd.reserve(top + 1);
        inv_gap.reserve(top + 1);
        {
            detail::WeightStream<S> head(
                ps, PositionWeight{RatioKind::G00, 1, 0, 0, k.parts()[0] - 1});
            detail::WeightStream<S> tail(
                ps, PositionWeight{RatioKind::G00, -1, 1, 1, k.parts()[d - 1] - 2});
            for (long m = 0; m <= top; ++m) {
                w1.push_back(head.next());
                wd.push_back(tail.next());
            }
            inv_gap.push_back(ring::make_zero<S>(prec));
            for (long g = 1; g <= top; ++g)
                inv_gap.push_back(ring::one_like(w1[0]) /
                                  ring::shifted(ring::make_zero<S>(prec), g));
        }

        detail::HPrefixes<S> pref;
        if (d == 3 || d == 4) {
            detail::WeightStream<S> w2(ps,
                                       PositionWeight{RatioKind::None, 0, 1, 1, k.parts()[1] - 2});
            S run = ring::make_zero<S>(prec);
            pref.p2.reserve(top + 1);
            for (long m = 0; m <= top; ++m) {
                run += w2.next();
                pref.p2.push_back(run);
            }
        }
        if (d == 4) {
            detail::WeightStream<S> w3(ps,
                                       PositionWeight{RatioKind::None, 0, 1, 1, k.parts()[2] - 2});
            S run3 = ring::make_zero<S>(prec);
            S runq = ring::make_zero<S>(prec);
            pref.p3.reserve(top + 1);
            pref.q.reserve(top + 1);
            for (long m = 0; m <= top; ++m) {
                S w = w3.next();
                run3 += w;
                runq += w * pref.p2[m];
                pref.p3.push_back(run3);
                pref.q.push_back(runq);
            }
        }

        // Number of middle chains b <= m_2 <= ... <= m_{d-1} <= m.
        auto inner = [&](long b, long m) -> S {
            if (d == 2) return ring::one_like(w1[0]);
            if (d == 3) return b == 0 ? pref.p2[m] : pref.p2[m] - pref.p2[b - 1];
            // d == 4: Σ_{b<=x<=y<=m} w2(x) w3(y)
            S p2b = b == 0 ? ring::make_zero<S>(prec) : pref.p2[b - 1];
            S p3b = b == 0 ? ring::make_zero<S>(prec) : pref.p3[b - 1];
            S qb = b == 0 ? ring::make_zero<S>(prec) : pref.q[b - 1];
            return pref.q[m] - qb - p2b * (pref.p3[m] - p3b);
        };

        std::vector<S> per_m(top + 1, ring::make_zero<S>(prec));
        if (d <= 4) {
            for (long m = 1; m <= top; ++m) {
                S total = ring::make_zero<S>(prec);
                for (long b = 0; b < m; ++b)
                    total += w1[b] * inner(b, m) * inv_gap[m - b];
                per_m[m] = total * wd[m];
            }
        } else {
            // Incremental middle chain per base b.
            std::vector<PositionWeight> mids;
            for (std::size_t i = 1; i + 1 < d; ++i)
                mids.push_back(PositionWeight{RatioKind::None, 0, 1, 1, k.parts()[i] - 2});
            std::vector<std::vector<S>> midw(mids.size());
            for (std::size_t i = 0; i < mids.size(); ++i) {
                detail::WeightStream<S> s(ps, mids[i]);
                midw[i].reserve(top + 1);
                for (long m = 0; m <= top; ++m) midw[i].push_back(s.next());
            }
            for (long b = 0; b < top; ++b) {
                std::vector<S> acc(mids.size(), ring::make_zero<S>(prec));
                for (long m = b; m <= top; ++m) {
                    acc[0] += midw[0][m];
                    for (std::size_t i = 1; i < mids.size(); ++i)
                        acc[i] += midw[i][m] * acc[i - 1];
                    if (m > b) per_m[m] += w1[b] * acc.back() * wd[m] * inv_gap[m - b];
                }
            }
        }

        detail::TermProbe probe(top);
        std::vector<S> partials(th.size(), ring::make_zero<S>(prec));
        S run = ring::make_zero<S>(prec);
        std::size_t next = 0;
        for (long m = 0; m <= top; ++m) {
            run += per_m[m];
            if (!rational && probe.wants(m) && m > 0) probe.record(m, ring::abs_estimate(per_m[m]));
            while (next < th.size() && th[next] == m) {
                partials[next] = run;
                ++next;
            }
        }
        if (rational) {
            out.value = ring::to_value(partials[0]);
            out.err = ErrorBound(0.0);
            out.terms_used = top * static_cast<long>(d);
            out.levels_used = 1;
            return;
        }
        detail::check_divergence(probe, "H");
        // The 1/(m_d-m_1) kernel contributes one log factor; each middle
        // part equal to 1 contributes another.
        TailModel model;
        CBigFloat delta = p.t().to_cbf(prec);
        delta.re -= BigFloat(1L, prec);
        model.delta = delta;
        int middle_ones = 0;
        for (std::size_t i = 1; i + 1 < d; ++i)
            if (k.parts()[i] == 1) ++middle_ones;
        model.use_log = true;
        model.max_log_degree = 1 + middle_ones;
        std::vector<CBigFloat> ps2;
        ps2.reserve(partials.size());
        for (const S& v : partials)
            ps2.push_back(ring::from_value<CBigFloat>(ring::to_value(v), prec));
        Extrapolated e = extrapolate_points(th, ps2, pol, model);
        out.value = e.value.im.is_zero() ? ComplexValue(e.value.re) : ComplexValue(e.value);
        out.err = ErrorBound(e.err);
        out.terms_used = top * static_cast<long>(d);
        out.levels_used = e.levels_used;
    });
    return out;
}

}  // namespace mzv

#endif
