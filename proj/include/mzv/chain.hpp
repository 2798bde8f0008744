#ifndef MZV_CHAIN_HPP
#define MZV_CHAIN_HPP

#include <functional>
#include <vector>

#include "mzv/indexsets.hpp"
#include "mzv/ring.hpp"

namespace mzv {

// How the m-th factor of a nested sum looks. Every series in scope is a sum
// over chains 0 <= m_1 <= ... <= m_d of a product of per-position weights
//     w(m) = ratio(m)^ratio_pow / ((m+α)^ea (m+β)^eb (m+γ)^eg),
// where ratio is one of the Pochhammer quotients below. Negative exponents
// put the factor in the numerator.
enum class RatioKind {
    None,
    G00,        // (α)_m (β)_m / ((γ)_m m!)
    G11,        // (α)_{m+1} (β)_{m+1} / ((γ)_m m!)
    PochAlpha,  // (α)_m / m!
};

struct PositionWeight {
    RatioKind kind = RatioKind::None;
    int ratio_pow = 0;  // -1, 0 or +1
    int e_alpha = 0;
    int e_beta = 0;
    int e_gamma = 0;
};

// A d-fold nested sum: per-position weights over a parameter triple. The
// head/tail Pochhammer-ratio factors of the series definitions are folded
// into the first/last position's `kind`/`ratio_pow`.
struct ChainWeightSpec {
    ParameterTriple params;
    std::vector<PositionWeight> positions;

    ChainWeightSpec(ParameterTriple p, std::vector<PositionWeight> pos)
        : params(std::move(p)), positions(std::move(pos)) {
        if (positions.empty()) throw contract_error("chain spec needs at least one position");
    }
    std::size_t depth() const { return positions.size(); }
};

namespace detail {

// (x)_n = x (x+1) ... (x+n-1)
template <typename S>
S pochhammer_t(const S& x, long n, long prec) {
    S acc = ring::make_one<S>(prec);
    for (long i = 0; i < n; ++i) acc = acc * ring::shifted(x, i);
    return acc;
}

template <typename S>
S factorial_t(long n, long prec) {
    S acc = ring::make_one<S>(prec);
    for (long i = 2; i <= n; ++i) acc = acc * ring::shifted(ring::make_zero<S>(prec), i);
    return acc;
}

template <typename S>
struct ParamSet {
    S alpha, beta, gamma;
    long prec;

    ParamSet(const ParameterTriple& p, long precision)
        : alpha(ring::from_value<S>(p.alpha(), precision)),
          beta(ring::from_value<S>(p.beta(), precision)),
          gamma(ring::from_value<S>(p.gamma(), precision)),
          prec(precision) {}
    // Raw components, for pointwise algebra that does not need the series
    // convergence constraints.
    ParamSet(S a, S b, S g, long precision)
        : alpha(std::move(a)), beta(std::move(b)), gamma(std::move(g)), prec(precision) {}
};

// Direct (non-incremental) evaluation of a ratio factor at index m.
template <typename S>
S ratio_at(const ParamSet<S>& ps, RatioKind kind, long m) {
    switch (kind) {
        case RatioKind::None:
            return ring::make_one<S>(ps.prec);
        case RatioKind::G00:
            return pochhammer_t(ps.alpha, m, ps.prec) * pochhammer_t(ps.beta, m, ps.prec) /
                   (pochhammer_t(ps.gamma, m, ps.prec) * factorial_t<S>(m, ps.prec));
        case RatioKind::G11:
            return pochhammer_t(ps.alpha, m + 1, ps.prec) * pochhammer_t(ps.beta, m + 1, ps.prec) /
                   (pochhammer_t(ps.gamma, m, ps.prec) * factorial_t<S>(m, ps.prec));
        case RatioKind::PochAlpha:
            return pochhammer_t(ps.alpha, m, ps.prec) / factorial_t<S>(m, ps.prec);
    }
    throw contract_error("unknown ratio kind");
}

// Direct weight evaluation; the reference semantics for both evaluators.
template <typename S>
S weight_at(const ParamSet<S>& ps, const PositionWeight& pw, long m) {
    S num = ring::make_one<S>(ps.prec);
    S den = ring::make_one<S>(ps.prec);
    if (pw.ratio_pow != 0) {
        S r = ratio_at(ps, pw.kind, m);
        (pw.ratio_pow > 0 ? num : den) = (pw.ratio_pow > 0 ? num : den) * r;
    }
    auto fold = [&](const S& x, int e) {
        if (e == 0) return;
        S f = ring::pow_i(ring::shifted(x, m), e > 0 ? e : -e);
        if (e > 0)
            den = den * f;
        else
            num = num * f;
    };
    fold(ps.alpha, pw.e_alpha);
    fold(ps.beta, pw.e_beta);
    fold(ps.gamma, pw.e_gamma);
    return num / den;
}

// Sequential weight evaluation: the Pochhammer ratio advances by one
// rational-function step per index instead of being rebuilt.
template <typename S>
class WeightStream {
public:
    WeightStream(const ParamSet<S>& ps, const PositionWeight& pw)
        : ps_(&ps), pw_(pw), ratio_(ring::make_one<S>(ps.prec)), m_(0) {
        if (pw_.kind == RatioKind::G11 && pw_.ratio_pow != 0)
            ratio_ = ps.alpha * ps.beta;  // (α)_1 (β)_1 / ((γ)_0 0!)
    }

    // w(m) for the current m, then advance.
    S next() {
        S w = value_at_current();
        advance();
        return w;
    }

private:
    S value_at_current() const {
        const ParamSet<S>& ps = *ps_;
        S num = ring::make_one<S>(ps.prec);
        S den = ring::make_one<S>(ps.prec);
        if (pw_.ratio_pow > 0)
            num = ratio_;
        else if (pw_.ratio_pow < 0)
            den = ratio_;
        auto fold = [&](const S& x, int e) {
            if (e == 0) return;
            S f = ring::pow_i(ring::shifted(x, m_), e > 0 ? e : -e);
            if (e > 0)
                den = den * f;
            else
                num = num * f;
        };
        fold(ps.alpha, pw_.e_alpha);
        fold(ps.beta, pw_.e_beta);
        fold(ps.gamma, pw_.e_gamma);
        return num / den;
    }

    void advance() {
        const ParamSet<S>& ps = *ps_;
        if (pw_.ratio_pow != 0) {
            switch (pw_.kind) {
                case RatioKind::None:
                    break;
                case RatioKind::G00:
                    ratio_ = ratio_ * (ring::shifted(ps.alpha, m_) * ring::shifted(ps.beta, m_)) /
                             (ring::shifted(ps.gamma, m_) * ring::shifted(ring::make_zero<S>(ps.prec), m_ + 1));
                    break;
                case RatioKind::G11:
                    ratio_ = ratio_ * (ring::shifted(ps.alpha, m_ + 1) * ring::shifted(ps.beta, m_ + 1)) /
                             (ring::shifted(ps.gamma, m_) * ring::shifted(ring::make_zero<S>(ps.prec), m_ + 1));
                    break;
                case RatioKind::PochAlpha:
                    ratio_ = ratio_ * ring::shifted(ps.alpha, m_) /
                             ring::shifted(ring::make_zero<S>(ps.prec), m_ + 1);
                    break;
            }
        }
        ++m_;
    }

    const ParamSet<S>* ps_;
    PositionWeight pw_;
    S ratio_;
    long m_;
};

// One pass of the prefix-sum recursion
//   A_1(m) = Σ_{m_1<=m} w_1(m_1),  A_i(m) = Σ_{m_i<=m} w_i(m_i) A_{i-1}(m_i),
// reporting A_d at each threshold. `on_term` sees the m-th top-level summand
// (the increment of A_d), for decay diagnostics.
template <typename S, typename OnLevel, typename OnTerm>
void chain_prefix_pass(const ChainWeightSpec& spec, const std::vector<long>& thresholds, long prec,
                       OnLevel&& on_level, OnTerm&& on_term) {
    const std::size_t d = spec.depth();
    ParamSet<S> ps(spec.params, prec);
    std::vector<WeightStream<S>> streams;
    streams.reserve(d);
    for (const auto& pw : spec.positions) streams.emplace_back(ps, pw);

    std::vector<S> acc(d, ring::make_zero<S>(prec));
    const long top = thresholds.empty() ? -1 : thresholds.back();
    std::size_t next_threshold = 0;
    for (long m = 0; m <= top; ++m) {
        S w = streams[0].next();
        acc[0] += w;
        S term = (d == 1) ? w : ring::make_zero<S>(prec);
        for (std::size_t i = 1; i < d; ++i) {
            S wi = streams[i].next();
            S inc = wi * acc[i - 1];
            acc[i] += inc;
            if (i + 1 == d) term = inc;
        }
        on_term(m, term);
        while (next_threshold < thresholds.size() && thresholds[next_threshold] == m) {
            on_level(next_threshold, acc[d - 1]);
            ++next_threshold;
        }
    }
}

}  // namespace detail

// Truncated chain sum Σ_{0<=m_1<=...<=m_d<=M} Π_i w_i(m_i) by iterated prefix
// sums, O(M·d) ring operations.
inline ComplexValue chain_dp(const ChainWeightSpec& spec, long truncation,
                             long precision = kDefaultPrecisionBits) {
    if (truncation < 0) throw contract_error("truncation must be >= 0");
    std::vector<long> th{truncation};
    ComplexValue out;
    auto run = [&](auto ring_tag) {
        using S = decltype(ring_tag);
        detail::chain_prefix_pass<S>(
            spec, th, precision, [&](std::size_t, const S& v) { out = ring::to_value(v); },
            [](long, const auto&) {});
    };
    const bool real = spec.params.all_real();
    if (spec.params.backend() == Backend::RATIONAL) {
        if (real)
            run(Rational());
        else
            run(CRational());
    } else {
        if (real)
            run(BigFloat(precision));
        else
            run(cbf_zero(precision));
    }
    return out;
}

// Literal enumeration over S(<=^{d-1}) ∩ [0,M]^d; the oracle for chain_dp.
inline ComplexValue brute_force_chain(const ChainWeightSpec& spec, long truncation,
                                      long precision = kDefaultPrecisionBits) {
    if (truncation < 0) throw contract_error("truncation must be >= 0");
    const std::size_t d = spec.depth();
    if (d > 4) throw resource_error("brute-force chain enumeration limited to depth <= 4");
    double count = std::pow(static_cast<double>(truncation) + 1.0, static_cast<double>(d));
    if (count > 1e6) throw resource_error("brute-force chain enumeration limited to (M+1)^d <= 1e6");

    ComplexValue out;
    auto run = [&](auto ring_tag) {
        using S = decltype(ring_tag);
        detail::ParamSet<S> ps(spec.params, precision);
        S total = ring::make_zero<S>(precision);
        if (d == 1) {
            for (long m = 0; m <= truncation; ++m)
                total += detail::weight_at(ps, spec.positions[0], m);
        } else {
            IndexWord word = IndexWord::repeat(Letter::LE, d - 1);
            detail::for_each_chain(word, truncation, [&](const Tuple& t) {
                S prod = detail::weight_at(ps, spec.positions[0], t[0]);
                for (std::size_t i = 1; i < d; ++i)
                    prod = prod * detail::weight_at(ps, spec.positions[i], t[i]);
                total += prod;
            });
        }
        out = ring::to_value(total);
    };
    const bool real = spec.params.all_real();
    if (spec.params.backend() == Backend::RATIONAL) {
        if (real)
            run(Rational());
        else
            run(CRational());
    } else {
        if (real)
            run(BigFloat(precision));
        else
            run(cbf_zero(precision));
    }
    return out;
}

}  // namespace mzv

#endif
