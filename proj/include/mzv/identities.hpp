#ifndef MZV_IDENTITIES_HPP
#define MZV_IDENTITIES_HPP

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mzv/series.hpp"

namespace mzv {

// Every identity the library checks: the cyclic sum theorems, the lemmas and
// transport relations behind them (numeric, residual-based), and the
// recurrences, decompositions, set lemma and finite identities (exact).
enum class IdentityId {
    OW,                 // cyclic sum formula for zeta-star values
    IGARASHI,           // two-parameter cyclic sum formula
    MAIN,               // three-parameter cyclic sum formula (maximal height)
    RHS_COLLAPSE,       // gamma=beta collapse of the three-parameter right side
    BETA_GAMMA_FINITE,  // alpha Σ_{m<=n} (alpha)_m/m! = (alpha+n)(alpha)_n/n!
    Z2_Z1_BRIDGE,       // alpha Z_II*(k+1,k..; a,b,b) = Z_I*(k,k..; a,b)
    LEMMA31,
    LEMMA32,
    TRANS1,
    TRANS2,
    TRANS3,
    DEC1,               // 1/((l-m)(a+l)(b+l)) partial fractions
    DEC2,               // (l+g)(l+1)/(l+1-m) split
    REC1,
    REC2,
    REC3,
    PI_G,               // Pi(m|2) g_m^{1,1} = g_m^{0,0}
    SET1,
    SET2,
    SET3,
    H_REMARK,           // the two displayed forms of H agree
};

inline const std::vector<IdentityId>& list_identities() {
    static const std::vector<IdentityId> all = {
        IdentityId::OW,           IdentityId::IGARASHI,
        IdentityId::MAIN,         IdentityId::RHS_COLLAPSE,
        IdentityId::BETA_GAMMA_FINITE, IdentityId::Z2_Z1_BRIDGE,
        IdentityId::LEMMA31,      IdentityId::LEMMA32,
        IdentityId::TRANS1,       IdentityId::TRANS2,
        IdentityId::TRANS3,       IdentityId::DEC1,
        IdentityId::DEC2,         IdentityId::REC1,
        IdentityId::REC2,         IdentityId::REC3,
        IdentityId::PI_G,         IdentityId::SET1,
        IdentityId::SET2,         IdentityId::SET3,
        IdentityId::H_REMARK,
    };
    return all;
}

inline std::string identity_name(IdentityId id) {
    switch (id) {
        case IdentityId::OW: return "ow";
        case IdentityId::IGARASHI: return "igarashi";
        case IdentityId::MAIN: return "main";
        case IdentityId::RHS_COLLAPSE: return "rhs_collapse";
        case IdentityId::BETA_GAMMA_FINITE: return "beta_gamma_finite";
        case IdentityId::Z2_Z1_BRIDGE: return "z2_z1_bridge";
        case IdentityId::LEMMA31: return "lemma31";
        case IdentityId::LEMMA32: return "lemma32";
        case IdentityId::TRANS1: return "trans1";
        case IdentityId::TRANS2: return "trans2";
        case IdentityId::TRANS3: return "trans3";
        case IdentityId::DEC1: return "dec1";
        case IdentityId::DEC2: return "dec2";
        case IdentityId::REC1: return "rec1";
        case IdentityId::REC2: return "rec2";
        case IdentityId::REC3: return "rec3";
        case IdentityId::PI_G: return "pi_g";
        case IdentityId::SET1: return "set1";
        case IdentityId::SET2: return "set2";
        case IdentityId::SET3: return "set3";
        case IdentityId::H_REMARK: return "h_remark";
    }
    throw contract_error("unknown identity id");
}

inline IdentityId identity_from_name(const std::string& name) {
    for (IdentityId id : list_identities())
        if (identity_name(id) == name) return id;
    throw config_error("unknown identity '" + name + "'");
}

inline bool identity_is_exact(IdentityId id) {
    switch (id) {
        case IdentityId::BETA_GAMMA_FINITE:
        case IdentityId::DEC1:
        case IdentityId::DEC2:
        case IdentityId::REC1:
        case IdentityId::REC2:
        case IdentityId::REC3:
        case IdentityId::PI_G:
        case IdentityId::SET1:
        case IdentityId::SET2:
        case IdentityId::SET3:
        case IdentityId::H_REMARK:
            return true;
        default:
            return false;
    }
}

// One concrete check: an identity plus every free choice it needs.
// Composition conventions:
//   - ow / igarashi / main: k is the cyclic composition.
//   - trans1/2/3 and z2_z1_bridge: k = (k, k_1, ..., k_d) — the transported
//     (resp. leading) exponent first, then the fixed inner composition
//     (possibly empty for the transport relations... the inner block is
//     k.parts[1..]).
//   - h_remark: k is the H composition, M the exact truncation.
struct IdentityCase {
    IdentityId id;
    std::optional<Composition> k;
    std::optional<ComplexValue> alpha, beta, gamma;
    long m = -1, n = -1, j = -1, l = -1;
    long d = -1;  // depth for SET*
    long N = -1;  // bound for SET*
    long M = -1;  // exact truncation for H_REMARK
    TruncationPolicy policy;
};

struct Residual {
    ComplexValue lhs, rhs;
    double abs_diff = 0.0;
    double combined_err = 0.0;
    bool pass = false;
    long terms = 0;
    double time_ms = 0.0;
};

struct ExactResult {
    bool ok = false;
    std::string witness;  // empty when ok
    long cases_checked = 0;
    double time_ms = 0.0;
};

namespace detail {

class SideAccum {
public:
    explicit SideAccum(long prec) : v_(cbf_zero(prec)), prec_(prec) {}

    void add(double coeff, const SeriesValue& sv) {
        CBigFloat x = sv.value.to_cbf(prec_);
        BigFloat cf(coeff, prec_);
        v_.re += cf * x.re;
        v_.im += cf * x.im;
        err_ += std::fabs(coeff) * sv.err.magnitude;
        terms_ += sv.terms_used;
    }
    void add(const ComplexValue& coeff, const SeriesValue& sv) {
        CBigFloat x = sv.value.to_cbf(prec_);
        CBigFloat cf = coeff.to_cbf(prec_);
        v_ += cf * x;
        err_ += abs_double(cf) * sv.err.magnitude;
        terms_ += sv.terms_used;
    }
    void add_exact(const CBigFloat& x) { v_ += x; }

    const CBigFloat& value() const { return v_; }
    double err() const { return err_; }
    long terms() const { return terms_; }

private:
    CBigFloat v_;
    long prec_;
    double err_ = 0.0;
    long terms_ = 0;
};

// Per-case memoized access to the series module; repeated rotations of a
// symmetric composition hit the cache.
class SeriesEvaluator {
public:
    SeriesEvaluator(const ParameterTriple& p, const TruncationPolicy& pol) : p_(p), pol_(pol) {}

    const ParameterTriple& params() const { return p_; }

    SeriesValue ztriple(int a, int b, int cc) {
        return memo("zt|" + std::to_string(a) + "|" + std::to_string(b) + "|" + std::to_string(cc),
                    [&] { return z_triple(ExponentTriple(a, b, cc), p_, pol_); });
    }
    SeriesValue zdouble(int a, int b) {
        return memo("zd|" + std::to_string(a) + "|" + std::to_string(b),
                    [&] { return z_double(a, b, p_.alpha(), p_.beta(), pol_); });
    }
    SeriesValue z13(const Composition& k) {
        return memo("z13|" + k.to_string(), [&] { return z1_star3(k, p_, pol_); });
    }
    SeriesValue z12(const Composition& k) {
        return memo("z12|" + k.to_string(),
                    [&] { return z1_star2(k, p_.alpha(), p_.beta(), pol_); });
    }
    SeriesValue z2(const Composition& k) {
        return memo("z2|" + k.to_string(), [&] { return z2_star(k, p_, pol_); });
    }
    SeriesValue h(const Composition& k) {
        return memo("h|" + k.to_string(), [&] { return h_sum(k, p_, pol_); });
    }
    SeriesValue f(long m, long n) {
        return memo("f|" + std::to_string(m) + "|" + std::to_string(n),
                    [&] { return f_sum(m, n, p_, pol_); });
    }
    SeriesValue tail_g11(long n) {
        return memo("tail|" + std::to_string(n), [&] { return g11_tail(p_, n, pol_); });
    }

private:
    template <typename Fn>
    SeriesValue memo(const std::string& key, Fn&& fn) {
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        SeriesValue v = fn();
        cache_.emplace(key, v);
        return v;
    }
    ParameterTriple p_;
    TruncationPolicy pol_;
    std::map<std::string, SeriesValue> cache_;
};

// (j+1, k_{i+1}, ..., k_d, k_1, ..., k_{i-1}, k_i - j): the i-th cyclic term.
inline Composition cyclic_argument(const Composition& k, std::size_t i, int j) {
    const std::size_t d = k.depth();
    std::vector<int> parts;
    parts.reserve(d + 1);
    parts.push_back(j + 1);
    for (std::size_t step = 1; step < d; ++step)
        parts.push_back(k.parts()[(i - 1 + step) % d]);
    parts.push_back(k.parts()[i - 1] - j);
    return Composition(std::move(parts));
}

inline Composition concat_composition(int head, const std::vector<int>& middle, int tail) {
    std::vector<int> parts;
    parts.reserve(middle.size() + 2);
    parts.push_back(head);
    parts.insert(parts.end(), middle.begin(), middle.end());
    parts.push_back(tail);
    return Composition(std::move(parts));
}

inline ParameterTriple numeric_params(const IdentityCase& c, long prec, bool force_beta_gamma) {
    if (!c.alpha || !c.beta) throw contract_error("case requires alpha and beta");
    ComplexValue a = ComplexValue(c.alpha->to_cbf(prec));
    ComplexValue b = ComplexValue(c.beta->to_cbf(prec));
    ComplexValue g = (force_beta_gamma || !c.gamma) ? b : ComplexValue(c.gamma->to_cbf(prec));
    return ParameterTriple(a, b, g);
}

inline ComplexValue negated(const ComplexValue& v, long prec) {
    CBigFloat z = v.to_cbf(prec);
    return ComplexValue(-z.re, -z.im);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// verify_numeric: evaluate both sides independently, compare residual
// ---------------------------------------------------------------------------

inline Residual verify_numeric(const IdentityCase& c) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    c.policy.validate();
    const long prec = c.policy.precision_bits;

    detail::SideAccum lhs(prec), rhs(prec);

    auto require = [](bool cond, const char* clause) {
        if (!cond) throw contract_error(std::string("identity hypothesis violated: ") + clause);
    };

    switch (c.id) {
        case IdentityId::OW: {
            require(c.k.has_value(), "composition k required");
            const Composition& k = *c.k;
            require(k.weight() != static_cast<int>(k.depth()), "k != d required");
            ComplexValue one(BigFloat(1L, prec));
            ParameterTriple unit(one, one, one);
            detail::SeriesEvaluator ev(unit, c.policy);
            for (std::size_t i = 1; i <= k.depth(); ++i)
                for (int j = 0; j + 2 <= k.parts()[i - 1]; ++j)
                    lhs.add(1.0, ev.z12(detail::cyclic_argument(k, i, j)));
            rhs.add(static_cast<double>(k.weight()), ev.ztriple(k.weight() + 1, 0, 0));
            break;
        }
        case IdentityId::IGARASHI: {
            require(c.k.has_value(), "composition k required");
            const Composition& k = *c.k;
            require(k.weight() != static_cast<int>(k.depth()), "k != d required");
            ParameterTriple p = detail::numeric_params(c, prec, /*force_beta_gamma=*/true);
            detail::SeriesEvaluator ev(p, c.policy);
            const int kw = k.weight();
            const int d = static_cast<int>(k.depth());
            for (std::size_t i = 1; i <= k.depth(); ++i)
                for (int j = 0; j + 2 <= k.parts()[i - 1]; ++j)
                    lhs.add(1.0, ev.z12(detail::cyclic_argument(k, i, j)));
            rhs.add(static_cast<double>(kw - d), ev.zdouble(d, kw - d + 1));
            rhs.add(static_cast<double>(d), ev.zdouble(d + 1, kw - d));
            break;
        }
        case IdentityId::MAIN: {
            require(c.k.has_value(), "composition k required");
            const Composition& k = *c.k;
            require(k.maximal_height(), "maximal height (every k_i >= 2) required");
            ParameterTriple p = detail::numeric_params(c, prec, false);
            detail::SeriesEvaluator ev(p, c.policy);
            const int kw = k.weight();
            const int d = static_cast<int>(k.depth());
            for (std::size_t i = 1; i <= k.depth(); ++i)
                for (int j = 0; j + 3 <= k.parts()[i - 1]; ++j)
                    lhs.add(1.0, ev.z13(detail::cyclic_argument(k, i, j)));
            ComplexValue t = p.t();
            for (std::size_t i = 1; i <= k.depth(); ++i)
                lhs.add(t, ev.z2(k.rotated(i).with_appended(2)));
            rhs.add(static_cast<double>(d), ev.ztriple(d, d + 1, kw - 2 * d));
            rhs.add(static_cast<double>(d), ev.ztriple(d + 1, d, kw - 2 * d));
            if (kw - 2 * d != 0)  // coefficient zero: skip the slow third sum
                rhs.add(static_cast<double>(kw - 2 * d), ev.ztriple(d, d, kw - 2 * d + 1));
            break;
        }
        case IdentityId::RHS_COLLAPSE: {
            require(c.k.has_value(), "composition k (for d and weight) required");
            const Composition& k = *c.k;
            const int kw = k.weight();
            const int d = static_cast<int>(k.depth());
            ParameterTriple p = detail::numeric_params(c, prec, /*force_beta_gamma=*/true);
            detail::SeriesEvaluator ev(p, c.policy);
            lhs.add(static_cast<double>(d), ev.ztriple(d, d + 1, kw - 2 * d));
            lhs.add(static_cast<double>(d), ev.ztriple(d + 1, d, kw - 2 * d));
            if (kw - 2 * d != 0)
                lhs.add(static_cast<double>(kw - 2 * d), ev.ztriple(d, d, kw - 2 * d + 1));
            rhs.add(static_cast<double>(kw - d), ev.zdouble(d, kw - d + 1));
            rhs.add(static_cast<double>(d), ev.zdouble(d + 1, kw - d));
            break;
        }
        case IdentityId::Z2_Z1_BRIDGE: {
            require(c.k.has_value() && c.k->depth() >= 2,
                    "composition (k, k_1, ..., k_d) with d >= 1 required");
            const Composition& full = *c.k;
            for (std::size_t i = 1; i < full.depth(); ++i)
                require(full.parts()[i] >= 2, "inner composition parts >= 2 required");
            ParameterTriple p = detail::numeric_params(c, prec, /*force_beta_gamma=*/true);
            detail::SeriesEvaluator ev(p, c.policy);
            std::vector<int> lifted = full.parts();
            lifted[0] += 1;
            lhs.add(p.alpha(), ev.z2(Composition(lifted)));
            rhs.add(1.0, ev.z12(full));
            break;
        }
        case IdentityId::LEMMA31: {
            require(c.m >= 0 && c.n >= 0 && c.m <= c.n, "0 <= m <= n required");
            ParameterTriple p = detail::numeric_params(c, prec, false);
            detail::SeriesEvaluator ev(p, c.policy);
            lhs.add(1.0, ev.f(c.m, c.n));
            CBigFloat g_next = g_factor(p, c.n + 1, 0, 0, prec).to_cbf(prec);
            CBigFloat sum_g = cbf_zero(prec);
            CBigFloat finite = cbf_zero(prec);
            for (long h = 0; h <= c.m; ++h) {
                CBigFloat gh = g_factor(p, h, 0, 0, prec).to_cbf(prec);
                sum_g += gh;
                BigFloat nm(c.n + 1 - h, prec);
                finite += gh / (CBigFloat(g_next.re * nm, g_next.im * nm));
            }
            rhs.add_exact(finite);
            CBigFloat coeff = p.t().to_cbf(prec) * sum_g;
            rhs.add(ComplexValue(-coeff.re, -coeff.im), ev.tail_g11(c.n));
            break;
        }
        case IdentityId::LEMMA32: {
            require(c.m >= 0 && c.n >= 0 && c.m <= c.n, "0 <= m <= n required");
            ParameterTriple p = detail::numeric_params(c, prec, false);
            detail::SeriesEvaluator ev(p, c.policy);
            lhs.add(1.0, ev.f(c.m, c.n));
            CBigFloat gm = g_factor(p, c.m, 0, 0, prec).to_cbf(prec);
            CBigFloat gn11 = g_factor(p, c.n, 1, 1, prec).to_cbf(prec);
            CBigFloat ab = p.alpha().to_cbf(prec) + p.beta().to_cbf(prec);
            ab.re += static_cast<long>(c.m + c.n);
            lhs.add_exact(-(ab * gm / gn11));
            CBigFloat gn00 = g_factor(p, c.n, 0, 0, prec).to_cbf(prec);
            CBigFloat finite = cbf_zero(prec);
            CBigFloat sum_g = cbf_zero(prec);
            for (long h = 0; h <= c.m; ++h) {
                CBigFloat gh = g_factor(p, h, 0, 0, prec).to_cbf(prec);
                sum_g += gh;
                if (h <= c.m - 1) {
                    BigFloat nh(c.n - h, prec);
                    finite += gh / CBigFloat(gn00.re * nh, gn00.im * nh);
                }
            }
            rhs.add_exact(finite);
            CBigFloat coeff = p.t().to_cbf(prec) * sum_g;
            rhs.add(ComplexValue(-coeff.re, -coeff.im), ev.tail_g11(c.n - 1));
            break;
        }
        case IdentityId::TRANS1:
        case IdentityId::TRANS2:
        case IdentityId::TRANS3: {
            require(c.k.has_value(), "composition (k, inner...) required");
            const std::vector<int>& parts = c.k->parts();
            const int kk = parts[0];
            require(kk >= 2, "transported exponent k >= 2 required");
            std::vector<int> mid(parts.begin() + 1, parts.end());
            const int d = static_cast<int>(mid.size());
            int w = kk;
            for (int part : mid) w += part;
            ParameterTriple p = detail::numeric_params(c, prec, false);
            detail::SeriesEvaluator ev(p, c.policy);
            if (c.id == IdentityId::TRANS1) {
                const int j = static_cast<int>(c.j);
                require(c.j >= 0 && c.j <= kk - 2, "0 <= j <= k-2 required");
                lhs.add(1.0, ev.h(detail::concat_composition(j + 1, mid, kk - j)));
                rhs.add(1.0, ev.h(detail::concat_composition(j + 2, mid, kk - j - 1)));
                rhs.add(-1.0, ev.z13(detail::concat_composition(j + 1, mid, kk - j)));
                rhs.add(1.0, ev.ztriple(d + 1, d + 1, w - 2 * d - 1));
            } else if (c.id == IdentityId::TRANS2) {
                lhs.add(1.0, ev.h(detail::concat_composition(1, mid, kk)));
                rhs.add(1.0, ev.h(detail::concat_composition(kk - 1, mid, 2)));
                for (int j = 0; j + 3 <= kk; ++j)
                    rhs.add(-1.0, ev.z13(detail::concat_composition(j + 1, mid, kk - j)));
                if (kk != 2)
                    rhs.add(static_cast<double>(kk - 2), ev.ztriple(d + 1, d + 1, w - 2 * d - 1));
            } else {
                for (int part : mid) require(part >= 2, "inner composition parts >= 2 required");
                lhs.add(1.0, ev.h(detail::concat_composition(kk - 1, mid, 2)));
                std::vector<int> h_parts{1, kk};
                h_parts.insert(h_parts.end(), mid.begin(), mid.end());
                rhs.add(1.0, ev.h(Composition(h_parts)));
                std::vector<int> z2_parts{kk};
                z2_parts.insert(z2_parts.end(), mid.begin(), mid.end());
                z2_parts.push_back(2);
                rhs.add(detail::negated(p.t(), prec), ev.z2(Composition(z2_parts)));
                rhs.add(1.0, ev.ztriple(d + 1, d + 2, w - 2 * d - 2));
                rhs.add(1.0, ev.ztriple(d + 2, d + 1, w - 2 * d - 2));
            }
            break;
        }
        default:
            throw contract_error("verify_numeric called with an exact identity; use verify_exact");
    }

    Residual r;
    CBigFloat diff = lhs.value() - rhs.value();
    r.lhs = lhs.value().im.is_zero() ? ComplexValue(lhs.value().re) : ComplexValue(lhs.value());
    r.rhs = rhs.value().im.is_zero() ? ComplexValue(rhs.value().re) : ComplexValue(rhs.value());
    r.abs_diff = abs_double(diff);
    r.combined_err = lhs.err() + rhs.err();
    r.pass = r.abs_diff <= std::max(c.policy.target_eps, 10.0 * r.combined_err);
    r.terms = lhs.terms() + rhs.terms();
    r.time_ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
    return r;
}

// ---------------------------------------------------------------------------
// verify_exact: zero-tolerance checks in rational arithmetic
// ---------------------------------------------------------------------------

namespace detail {

inline CRational crat(const ComplexValue& v) {
    if (v.backend() != Backend::RATIONAL)
        throw contract_error("exact verification requires the RATIONAL backend");
    return v.crational();
}

inline std::string rat_str(const CRational& z) {
    if (z.im.is_zero()) return z.re.to_string();
    return z.re.to_string() + (z.im.sign() < 0 ? "-" : "+") + z.im.abs().to_string() + "i";
}

inline bool is_nonpositive_integer(const CRational& z) {
    return z.im.is_zero() && z.re.is_nonpositive_integer();
}

// Exact checks validate only the constraints the pointwise identity needs
// (nonzero denominators); the series-level Re(t) > 0 hypothesis is not
// required for finite algebra.
struct ExactContext {
    CRational alpha, beta, gamma;
    detail::ParamSet<CRational> ps;

    ExactContext(const IdentityCase& c, bool need_alpha_pochhammer, bool need_beta_pochhammer,
                 bool need_gamma_pochhammer)
        : alpha(crat(require_param(c.alpha, "alpha"))),
          beta(c.beta ? crat(*c.beta) : CRational(Rational(1), Rational())),
          gamma(c.gamma ? crat(*c.gamma) : beta),
          ps(alpha, beta, gamma, 0) {
        if (need_alpha_pochhammer && is_nonpositive_integer(alpha))
            throw contract_error("parameter constraint violated: alpha not in Z_{<=0}");
        if (need_beta_pochhammer && is_nonpositive_integer(beta))
            throw contract_error("parameter constraint violated: beta not in Z_{<=0}");
        if (need_gamma_pochhammer && is_nonpositive_integer(gamma))
            throw contract_error("parameter constraint violated: gamma not in Z_{<=0}");
    }

    static const ComplexValue& require_param(const std::optional<ComplexValue>& v,
                                             const char* name) {
        if (!v) throw contract_error(std::string("case requires parameter ") + name);
        return *v;
    }

    CRational g(long m, int e1, int e2) const { return g_factor_t(ps, m, e1, e2); }
    static CRational from_long(long v) { return CRational(Rational(v), Rational()); }
};

inline ExactResult exact_fail(const std::string& witness) {
    ExactResult r;
    r.ok = false;
    r.witness = witness;
    return r;
}

}  // namespace detail

inline ExactResult verify_exact(const IdentityCase& c) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    ExactResult out;
    out.ok = true;

    auto fail = [&](const std::string& w) {
        out.ok = false;
        out.witness = w;
    };

    switch (c.id) {
        case IdentityId::SET1:
        case IdentityId::SET2:
        case IdentityId::SET3: {
            if (c.d < 2) throw contract_error("set lemma requires d >= 2");
            if (c.N < 0) throw contract_error("set lemma requires N >= 0");
            int part = c.id == IdentityId::SET1 ? 1 : (c.id == IdentityId::SET2 ? 2 : 3);
            DecompositionCheck chk =
                verify_set_decomposition(part, static_cast<std::size_t>(c.d), c.N);
            out.cases_checked = 1;
            if (!chk.ok) {
                std::string w = chk.detail;
                if (chk.witness) {
                    w += "; tuple (";
                    for (std::size_t i = 0; i < chk.witness->size(); ++i)
                        w += (i ? "," : "") + std::to_string((*chk.witness)[i]);
                    w += ")";
                }
                fail(w);
            }
            break;
        }
        case IdentityId::REC1: {
            detail::ExactContext ctx(c, true, true, true);
            if (c.m < 0) throw contract_error("rec1 requires m >= 0");
            CRational am = CRational(ctx.alpha.re + Rational(c.m), ctx.alpha.im);
            CRational bm = CRational(ctx.beta.re + Rational(c.m), ctx.beta.im);
            CRational g00 = ctx.g(c.m, 0, 0);
            out.cases_checked = 3;
            if (ctx.g(c.m, 1, 0) / am != g00) fail("g^{1,0}/(alpha+m) != g^{0,0} at m=" + std::to_string(c.m));
            else if (ctx.g(c.m, 0, 1) / bm != g00) fail("g^{0,1}/(beta+m) != g^{0,0} at m=" + std::to_string(c.m));
            else if (ctx.g(c.m, 1, 1) / (am * bm) != g00) fail("g^{1,1}/((alpha+m)(beta+m)) != g^{0,0} at m=" + std::to_string(c.m));
            break;
        }
        case IdentityId::REC2: {
            detail::ExactContext ctx(c, true, true, true);
            if (c.m < 0) throw contract_error("rec2 requires m >= 0");
            out.cases_checked = 4;
            for (int e1 = 0; e1 <= 1 && out.ok; ++e1)
                for (int e2 = 0; e2 <= 1 && out.ok; ++e2) {
                    CRational num = CRational(ctx.alpha.re + Rational(c.m + e1), ctx.alpha.im) *
                                    CRational(ctx.beta.re + Rational(c.m + e2), ctx.beta.im);
                    CRational den = CRational(ctx.gamma.re + Rational(c.m), ctx.gamma.im) *
                                    detail::ExactContext::from_long(c.m + 1);
                    if (ctx.g(c.m + 1, e1, e2) != num / den * ctx.g(c.m, e1, e2))
                        fail("recurrence step fails at m=" + std::to_string(c.m) + ", eps=(" +
                             std::to_string(e1) + "," + std::to_string(e2) + ")");
                }
            break;
        }
        case IdentityId::REC3: {
            detail::ExactContext ctx(c, true, true, true);
            if (c.m < 0) throw contract_error("rec3 requires m >= 0");
            out.cases_checked = 1;
            CRational den = CRational(ctx.gamma.re + Rational(c.m), ctx.gamma.im) *
                            detail::ExactContext::from_long(c.m + 1);
            if (ctx.g(c.m + 1, 0, 0) != ctx.g(c.m, 1, 1) / den)
                fail("g_{m+1}^{0,0} != g_m^{1,1}/((m+gamma)(m+1)) at m=" + std::to_string(c.m));
            break;
        }
        case IdentityId::DEC1: {
            detail::ExactContext ctx(c, true, true, false);
            if (c.l < 0 || c.m < 0 || c.l == c.m)
                throw contract_error("dec1 requires l, m >= 0 with l != m");
            CRational al = CRational(ctx.alpha.re + Rational(c.l), ctx.alpha.im);
            CRational bl = CRational(ctx.beta.re + Rational(c.l), ctx.beta.im);
            CRational am = CRational(ctx.alpha.re + Rational(c.m), ctx.alpha.im);
            CRational bm = CRational(ctx.beta.re + Rational(c.m), ctx.beta.im);
            CRational lm = detail::ExactContext::from_long(c.l - c.m);
            CRational abml = ctx.alpha + ctx.beta;
            abml.re += Rational(c.m + c.l);
            CRational side1 = detail::ExactContext::from_long(1) / (lm * al * bl);
            CRational side2 = (detail::ExactContext::from_long(1) / lm - abml / (al * bl)) / (am * bm);
            out.cases_checked = 1;
            if (side1 != side2)
                fail("partial fraction split fails at l=" + std::to_string(c.l) +
                     ", m=" + std::to_string(c.m));
            break;
        }
        case IdentityId::DEC2: {
            detail::ExactContext ctx(c, false, false, false);
            if (c.l < 0 || c.m < 0 || c.l + 1 == c.m)
                throw contract_error("dec2 requires l, m >= 0 with l+1 != m");
            CRational gl = CRational(ctx.gamma.re + Rational(c.l), ctx.gamma.im);
            CRational l1 = detail::ExactContext::from_long(c.l + 1);
            CRational l1m = detail::ExactContext::from_long(c.l + 1 - c.m);
            CRational gm1 = CRational(ctx.gamma.re + Rational(c.m - 1), ctx.gamma.im);
            CRational mm = detail::ExactContext::from_long(c.m);
            CRational side1 = gl * l1 / l1m;
            // (l+γ+m) + (γ+m-1) m / (l+1-m)
            CRational lead = CRational(ctx.gamma.re + Rational(c.l + c.m), ctx.gamma.im);
            CRational rest = gm1 * mm / l1m;
            out.cases_checked = 1;
            if (side1 != lead + rest)
                fail("quotient split fails at l=" + std::to_string(c.l) +
                     ", m=" + std::to_string(c.m));
            break;
        }
        case IdentityId::PI_G: {
            detail::ExactContext ctx(c, true, true, true);
            if (c.m < 0) throw contract_error("pi_g requires m >= 0");
            CRational piw = detail::pi_weight_t(ctx.ps, {c.m}, Composition({2}));
            out.cases_checked = 1;
            if (piw * ctx.g(c.m, 1, 1) != ctx.g(c.m, 0, 0))
                fail("Pi(m|2) g^{1,1} != g^{0,0} at m=" + std::to_string(c.m));
            break;
        }
        case IdentityId::BETA_GAMMA_FINITE: {
            detail::ExactContext ctx(c, false, false, false);
            if (c.n < 0) throw contract_error("finite identity requires n >= 0");
            CRational sum = CRational(Rational(), Rational());
            CRational term = detail::ExactContext::from_long(1);  // (α)_0/0!
            for (long h = 0; h <= c.n; ++h) {
                sum += term;
                CRational ah = CRational(ctx.alpha.re + Rational(h), ctx.alpha.im);
                term = term * ah / detail::ExactContext::from_long(h + 1);
            }
            // term now holds (α)_{n+1}/(n+1)!; recompute (α)_n/n! directly.
            CRational poch_n = detail::pochhammer_t(ctx.alpha, c.n, 0);
            CRational fact_n = detail::factorial_t<CRational>(c.n, 0);
            CRational lhs_v = ctx.alpha * sum;
            CRational an = CRational(ctx.alpha.re + Rational(c.n), ctx.alpha.im);
            CRational rhs_v = an * poch_n / fact_n;
            out.cases_checked = 1;
            if (lhs_v != rhs_v) fail("finite Pochhammer sum fails at n=" + std::to_string(c.n));
            break;
        }
        case IdentityId::H_REMARK: {
            detail::ExactContext ctx(c, true, true, true);
            if (!c.k) throw contract_error("h_remark requires a composition");
            if (c.M < 1) throw contract_error("h_remark requires truncation M >= 1");
            const Composition& k = *c.k;
            if (k.depth() < 2) throw contract_error("H requires depth >= 2");
            const std::size_t d = k.depth();
            TupleSetSlice slice =
                enumerate_restricted(IndexWord::repeat(Letter::LE, d - 1), 1, d, c.M);
            CRational a_total{Rational(), Rational()};
            CRational b_total{Rational(), Rational()};
            std::vector<int> tail_parts(k.parts().begin() + 1, k.parts().end());
            Composition k_tail(tail_parts);
            std::vector<int> lift_parts = k.parts();
            lift_parts[0] += 1;
            Composition k_lift(lift_parts);
            for (const Tuple& t : slice.tuples) {
                long m1 = t.front(), md = t.back();
                CRational kern = detail::ExactContext::from_long(md - m1);
                CRational g_ratio_a = ctx.g(m1, 0, 0) / ctx.g(md, 0, 0);
                CRational gpow = ring::pow_i(
                    CRational(ctx.gamma.re + Rational(m1), ctx.gamma.im),
                    static_cast<long>(k.parts()[0] - 1));
                std::vector<long> rest(t.begin() + 1, t.end());
                CRational pi_a = detail::pi_weight_t(ctx.ps, rest, k_tail);
                a_total += g_ratio_a / gpow * pi_a / kern;
                CRational g_ratio_b = ctx.g(m1, 1, 1) / ctx.g(md, 0, 0);
                std::vector<long> full(t.begin(), t.end());
                CRational pi_b = detail::pi_weight_t(ctx.ps, full, k_lift);
                b_total += g_ratio_b * pi_b / kern;
            }
            out.cases_checked = static_cast<long>(slice.size());
            if (a_total != b_total)
                fail("H forms disagree at k=(" + k.to_string() + "), M=" + std::to_string(c.M) +
                     ": " + detail::rat_str(a_total) + " vs " + detail::rat_str(b_total));
            break;
        }
        default:
            throw contract_error("verify_exact called with a numeric identity; use verify_numeric");
    }

    out.time_ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
    return out;
}

}  // namespace mzv

#endif
