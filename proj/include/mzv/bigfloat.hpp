#ifndef MZV_BIGFLOAT_HPP
#define MZV_BIGFLOAT_HPP

#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>

#include "mzv/errors.hpp"
#include "mzv/rational.hpp"

namespace mzv {

inline constexpr long kMinPrecisionBits = 64;
inline constexpr long kDefaultPrecisionBits = 256;

// Arbitrary-precision binary float (value-semantic mpfr_t wrapper, round-to-nearest).
// The precision of a result is the max of the operand precisions, so a computation
// started at p bits stays at p bits throughout.
class BigFloat {
public:
    explicit BigFloat(long prec = kDefaultPrecisionBits) {
        mpfr_init2(f_, check_prec(prec));
        mpfr_set_zero(f_, 1);
    }
    BigFloat(double d, long prec) {
        mpfr_init2(f_, check_prec(prec));
        mpfr_set_d(f_, d, MPFR_RNDN);
    }
    BigFloat(long n, long prec) {
        mpfr_init2(f_, check_prec(prec));
        mpfr_set_si(f_, n, MPFR_RNDN);
    }
    BigFloat(const Rational& q, long prec) {
        mpfr_init2(f_, check_prec(prec));
        mpfr_set_q(f_, q.raw(), MPFR_RNDN);
    }

    BigFloat(const BigFloat& o) {
        mpfr_init2(f_, mpfr_get_prec(o.f_));
        mpfr_set(f_, o.f_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(f_, mpfr_get_prec(o.f_));
        mpfr_swap(f_, o.f_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(f_, mpfr_get_prec(o.f_));
            mpfr_set(f_, o.f_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(f_, o.f_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(f_); }

    // Correctly rounded conversion of a decimal literal like "1.5" or "2.5e-3".
    static BigFloat from_decimal(std::string_view text, long prec) {
        BigFloat r(prec);
        std::string s(text);
        if (s.empty()) throw parse_error("empty numeric literal", 0);
        char* end = nullptr;
        mpfr_strtofr(r.f_, s.c_str(), &end, 10, MPFR_RNDN);
        if (end != s.c_str() + s.size())
            throw parse_error("malformed decimal literal '" + s + "'",
                              static_cast<std::size_t>(end - s.c_str()));
        return r;
    }

    long prec() const { return mpfr_get_prec(f_); }
    bool is_zero() const { return mpfr_zero_p(f_) != 0; }
    int sign() const { return mpfr_sgn(f_); }
    bool is_finite() const { return mpfr_number_p(f_) != 0; }
    double to_double() const { return mpfr_get_d(f_, MPFR_RNDN); }

    static long result_prec(const BigFloat& a, const BigFloat& b) {
        return std::max(a.prec(), b.prec());
    }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r(result_prec(a, b));
        mpfr_add(r.f_, a.f_, b.f_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r(result_prec(a, b));
        mpfr_sub(r.f_, a.f_, b.f_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r(result_prec(a, b));
        mpfr_mul(r.f_, a.f_, b.f_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        if (b.is_zero()) throw contract_error("big-float division by zero");
        BigFloat r(result_prec(a, b));
        mpfr_div(r.f_, a.f_, b.f_, MPFR_RNDN);
        return r;
    }
    BigFloat operator-() const {
        BigFloat r(prec());
        mpfr_neg(r.f_, f_, MPFR_RNDN);
        return r;
    }

    BigFloat& operator+=(const BigFloat& o) { mpfr_add(f_, f_, o.f_, MPFR_RNDN); return *this; }
    BigFloat& operator-=(const BigFloat& o) { mpfr_sub(f_, f_, o.f_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(const BigFloat& o) { mpfr_mul(f_, f_, o.f_, MPFR_RNDN); return *this; }
    BigFloat& operator/=(const BigFloat& o) {
        if (o.is_zero()) throw contract_error("big-float division by zero");
        mpfr_div(f_, f_, o.f_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator+=(long n) { mpfr_add_si(f_, f_, n, MPFR_RNDN); return *this; }
    BigFloat& operator*=(long n) { mpfr_mul_si(f_, f_, n, MPFR_RNDN); return *this; }
    BigFloat& operator/=(long n) {
        if (n == 0) throw contract_error("big-float division by zero");
        mpfr_div_si(f_, f_, n, MPFR_RNDN);
        return *this;
    }

    // In-place three-address forms for hot loops (no temporaries).
    void set(const BigFloat& o) { mpfr_set(f_, o.f_, MPFR_RNDN); }
    void set_si(long n) { mpfr_set_si(f_, n, MPFR_RNDN); }
    void set_zero() { mpfr_set_zero(f_, 1); }
    void add(const BigFloat& a, const BigFloat& b) { mpfr_add(f_, a.f_, b.f_, MPFR_RNDN); }
    void sub(const BigFloat& a, const BigFloat& b) { mpfr_sub(f_, a.f_, b.f_, MPFR_RNDN); }
    void mul(const BigFloat& a, const BigFloat& b) { mpfr_mul(f_, a.f_, b.f_, MPFR_RNDN); }
    void div(const BigFloat& a, const BigFloat& b) { mpfr_div(f_, a.f_, b.f_, MPFR_RNDN); }
    void fma(const BigFloat& a, const BigFloat& b, const BigFloat& c) {
        mpfr_fma(f_, a.f_, b.f_, c.f_, MPFR_RNDN);  // a*b + c
    }
    void add_si(const BigFloat& a, long n) { mpfr_add_si(f_, a.f_, n, MPFR_RNDN); }
    void mul_si(const BigFloat& a, long n) { mpfr_mul_si(f_, a.f_, n, MPFR_RNDN); }
    void div_si(const BigFloat& a, long n) { mpfr_div_si(f_, a.f_, n, MPFR_RNDN); }
    void si_div(long n, const BigFloat& a) { mpfr_si_div(f_, n, a.f_, MPFR_RNDN); }

    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.f_, b.f_) != 0; }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.f_, b.f_) != 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.f_, b.f_) != 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.f_, b.f_) != 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.f_, b.f_) != 0; }

    BigFloat abs() const {
        BigFloat r(prec());
        mpfr_abs(r.f_, f_, MPFR_RNDN);
        return r;
    }
    BigFloat sqrt() const {
        BigFloat r(prec());
        mpfr_sqrt(r.f_, f_, MPFR_RNDN);
        return r;
    }
    BigFloat exp() const {
        BigFloat r(prec());
        mpfr_exp(r.f_, f_, MPFR_RNDN);
        return r;
    }
    BigFloat log() const {
        BigFloat r(prec());
        mpfr_log(r.f_, f_, MPFR_RNDN);
        return r;
    }
    BigFloat cos() const {
        BigFloat r(prec());
        mpfr_cos(r.f_, f_, MPFR_RNDN);
        return r;
    }
    BigFloat sin() const {
        BigFloat r(prec());
        mpfr_sin(r.f_, f_, MPFR_RNDN);
        return r;
    }

    // Nearest integer (as long) and distance to it; used for the
    // nonpositive-integer proximity test on BIGFLOAT parameters.
    long round_to_long() const {
        mpfr_t t;
        mpfr_init2(t, prec());
        mpfr_round(t, f_);
        long n = mpfr_get_si(t, MPFR_RNDN);
        mpfr_clear(t);
        return n;
    }

    // Decimal string with `digits` significant digits ("3.1416"-style rounding).
    std::string to_decimal(std::size_t digits) const {
        if (digits < 1) throw contract_error("format digits must be >= 1");
        if (is_zero()) return "0";
        if (!is_finite()) return mpfr_nan_p(f_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
        mpfr_exp_t e10 = 0;
        char* raw = mpfr_get_str(nullptr, &e10, 10, digits, f_, MPFR_RNDN);
        std::string mant(raw);
        mpfr_free_str(raw);
        bool neg = !mant.empty() && mant[0] == '-';
        if (neg) mant.erase(0, 1);
        // Trim trailing zeros of the mantissa but keep at least one digit.
        std::size_t last = mant.find_last_not_of('0');
        if (last == std::string::npos) last = 0;
        mant.erase(last + 1);
        std::string out;
        long e = static_cast<long>(e10);  // value = 0.mant * 10^e
        long ndig = static_cast<long>(mant.size());
        if (e > 0 && e <= ndig + 2 && e <= 18) {
            // Plain fixed form: digits before the point, maybe a fraction.
            if (e >= ndig)
                out = mant + std::string(static_cast<std::size_t>(e - ndig), '0');
            else
                out = mant.substr(0, static_cast<std::size_t>(e)) + "." + mant.substr(static_cast<std::size_t>(e));
        } else if (e <= 0 && e > -4) {
            out = "0." + std::string(static_cast<std::size_t>(-e), '0') + mant;
        } else {
            // Scientific form d.ddd e±xx.
            out = mant.substr(0, 1);
            if (mant.size() > 1) out += "." + mant.substr(1);
            out += "e" + std::to_string(e - 1);
        }
        return neg ? "-" + out : out;
    }

    const mpfr_t& raw() const { return f_; }
    mpfr_t& raw() { return f_; }

private:
    static long check_prec(long prec) {
        if (prec < kMinPrecisionBits)
            throw contract_error("precision must be at least " + std::to_string(kMinPrecisionBits) + " bits");
        return prec;
    }
    mpfr_t f_;
};

inline BigFloat pow_int(const BigFloat& base, long e) {
    BigFloat r(base.prec());
    mpfr_pow_si(r.raw(), base.raw(), e, MPFR_RNDN);
    return r;
}

// base^x for positive base.
inline BigFloat pow_real(const BigFloat& base, const BigFloat& x) {
    BigFloat r(BigFloat::result_prec(base, x));
    mpfr_pow(r.raw(), base.raw(), x.raw(), MPFR_RNDN);
    return r;
}

}  // namespace mzv

#endif
