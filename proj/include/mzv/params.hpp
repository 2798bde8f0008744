#ifndef MZV_PARAMS_HPP
#define MZV_PARAMS_HPP

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "mzv/scalar.hpp"

namespace mzv {

namespace detail {

// Closeness threshold for rejecting BIGFLOAT parameters sitting on a
// nonpositive integer; exact test under the RATIONAL backend.
inline constexpr double kPoleProximity = 1e-12;

inline bool near_nonpositive_integer(const ComplexValue& z) {
    if (z.backend() == Backend::RATIONAL) {
        const CRational& q = z.crational();
        return q.im.is_zero() && q.re.is_nonpositive_integer();
    }
    const CBigFloat& f = z.cbigfloat();
    double im = f.im.to_double();
    if (std::fabs(im) >= kPoleProximity) return false;
    double re = f.re.to_double();
    double nearest = std::round(re);
    return nearest <= 0.0 && std::fabs(re - nearest) < kPoleProximity;
}

inline bool re_positive(const ComplexValue& z) {
    if (z.backend() == Backend::RATIONAL) return z.crational().re.sign() > 0;
    return z.cbigfloat().re.sign() > 0;
}

}  // namespace detail

// The series parameters (α, β, γ) with Re(α+β−γ) > 0 and none of them a
// nonpositive integer. t = α+β−γ is always recomputed from the fields.
class ParameterTriple {
public:
    ParameterTriple(ComplexValue alpha, ComplexValue beta, ComplexValue gamma)
        : alpha_(std::move(alpha)), beta_(std::move(beta)), gamma_(std::move(gamma)) {
        if (alpha_.backend() != beta_.backend() || beta_.backend() != gamma_.backend())
            throw contract_error("parameter triple must use a single backend");
        if (detail::near_nonpositive_integer(alpha_))
            throw contract_error("parameter constraint violated: alpha not in Z_{<=0}");
        if (detail::near_nonpositive_integer(beta_))
            throw contract_error("parameter constraint violated: beta not in Z_{<=0}");
        if (detail::near_nonpositive_integer(gamma_))
            throw contract_error("parameter constraint violated: gamma not in Z_{<=0}");
        if (!detail::re_positive(t()))
            throw contract_error("parameter constraint violated: Re(alpha+beta-gamma) > 0");
    }

    static ParameterTriple real(double a, double b, double g, long prec = kDefaultPrecisionBits) {
        return ParameterTriple(ComplexValue(BigFloat(a, prec)), ComplexValue(BigFloat(b, prec)),
                               ComplexValue(BigFloat(g, prec)));
    }
    static ParameterTriple rational(const Rational& a, const Rational& b, const Rational& g) {
        return ParameterTriple(ComplexValue(a), ComplexValue(b), ComplexValue(g));
    }

    const ComplexValue& alpha() const { return alpha_; }
    const ComplexValue& beta() const { return beta_; }
    const ComplexValue& gamma() const { return gamma_; }
    ComplexValue t() const { return alpha_ + beta_ - gamma_; }

    Backend backend() const { return alpha_.backend(); }
    bool all_real() const { return alpha_.is_real() && beta_.is_real() && gamma_.is_real(); }

    ParameterTriple swapped_alpha_beta() const { return ParameterTriple(beta_, alpha_, gamma_); }

private:
    ComplexValue alpha_, beta_, gamma_;
};

// Exponent tuple (k_1, ..., k_d) of positive integers.
class Composition {
public:
    explicit Composition(std::vector<int> parts) : parts_(std::move(parts)) {
        if (parts_.empty()) throw contract_error("composition must be nonempty");
        for (int k : parts_)
            if (k < 1) throw contract_error("composition parts must be >= 1");
    }
    Composition(std::initializer_list<int> parts) : Composition(std::vector<int>(parts)) {}

    // "2,3,4" — comma-separated positive integers, no spaces.
    static Composition from_string(std::string_view text) {
        std::vector<int> parts;
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == start) throw parse_error("expected digit in composition", pos);
            parts.push_back(std::stoi(std::string(text.substr(start, pos - start))));
            if (pos < text.size()) {
                if (text[pos] != ',') throw parse_error("expected ',' in composition", pos);
                ++pos;
                if (pos == text.size()) throw parse_error("trailing ',' in composition", pos);
            }
        }
        if (parts.empty()) throw parse_error("empty composition", 0);
        return Composition(std::move(parts));
    }

    const std::vector<int>& parts() const { return parts_; }
    std::size_t depth() const { return parts_.size(); }
    int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    bool maximal_height() const {
        for (int k : parts_)
            if (k < 2) return false;
        return true;
    }
    bool tail_admissible() const { return parts_.back() != 1; }

    // (k_i, k_{i+1}, ..., k_d, k_1, ..., k_{i-1}) for 1-based i.
    Composition rotated(std::size_t i) const {
        std::vector<int> r;
        r.reserve(depth());
        for (std::size_t p = 0; p < depth(); ++p) r.push_back(parts_[(i - 1 + p) % depth()]);
        return Composition(std::move(r));
    }
    Composition with_appended(int k) const {
        std::vector<int> r = parts_;
        r.push_back(k);
        return Composition(std::move(r));
    }
    Composition with_prepended(int k) const {
        std::vector<int> r;
        r.reserve(depth() + 1);
        r.push_back(k);
        r.insert(r.end(), parts_.begin(), parts_.end());
        return Composition(std::move(r));
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(parts_[i]);
        }
        return s;
    }

    friend bool operator==(const Composition& a, const Composition& b) {
        return a.parts_ == b.parts_;
    }

private:
    std::vector<int> parts_;
};

// Exponents of the single sum Z(a|b|c).
struct ExponentTriple {
    int a = 0, b = 0, c = 0;

    ExponentTriple(int a_, int b_, int c_) : a(a_), b(b_), c(c_) {
        if (a + b + c < 2) throw contract_error("exponent triple requires a+b+c >= 2");
    }
};

// How far to sum and how hard to extrapolate.
struct TruncationPolicy {
    long max_terms = 1 << 16;        // M
    double target_eps = 1e-10;
    int levels = 6;                  // Richardson levels over M, M/2, M/4, ...
    long precision_bits = kDefaultPrecisionBits;

    TruncationPolicy() = default;
    TruncationPolicy(long m, double eps, int l, long prec = kDefaultPrecisionBits)
        : max_terms(m), target_eps(eps), levels(l), precision_bits(prec) {
        validate();
    }

    void validate() const {
        if (max_terms < 2) throw contract_error("policy requires max_terms >= 2");
        if (!(target_eps > 0)) throw contract_error("policy requires target_eps > 0");
        if (levels < 1) throw contract_error("policy requires levels >= 1");
        if (precision_bits < kMinPrecisionBits)
            throw contract_error("policy requires precision >= 64 bits");
        if (max_terms < (1L << levels))
            throw contract_error("policy requires max_terms >= 2^levels");
    }
};

// A computed series value with diagnostics.
struct SeriesValue {
    ComplexValue value;
    ErrorBound err;
    long terms_used = 0;   // top truncation actually summed, times depth
    int levels_used = 0;

    double value_abs() const {
        if (value.backend() == Backend::RATIONAL) {
            const CRational& q = value.crational();
            double r = q.re.to_double(), i = q.im.to_double();
            return std::sqrt(r * r + i * i);
        }
        return abs_double(value.cbigfloat());
    }
};

}  // namespace mzv

#endif
