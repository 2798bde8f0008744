#ifndef MZV_RATIONAL_HPP
#define MZV_RATIONAL_HPP

#include <gmp.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "mzv/errors.hpp"

namespace mzv {

// Exact rational number, always stored in lowest terms (value-semantic mpq_t wrapper).
class Rational {
public:
    Rational() { mpq_init(q_); }
    Rational(long num, unsigned long den) {
        if (den == 0) throw contract_error("rational with zero denominator");
        mpq_init(q_);
        mpq_set_si(q_, num, den);
        mpq_canonicalize(q_);
    }
    explicit Rational(long n) { mpq_init(q_); mpq_set_si(q_, n, 1); }

    Rational(const Rational& o) { mpq_init(q_); mpq_set(q_, o.q_); }
    Rational(Rational&& o) noexcept { mpq_init(q_); mpq_swap(q_, o.q_); }
    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        if (this != &o) mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rational() { mpq_clear(q_); }

    // "p", "-p" or "p/q" in base 10.
    static Rational from_string(std::string_view text) {
        Rational r;
        std::string s(text);
        if (s.empty()) throw parse_error("empty rational literal", 0);
        if (mpq_set_str(r.q_, s.c_str(), 10) != 0)
            throw parse_error("malformed rational literal '" + s + "'", 0);
        if (mpz_sgn(mpq_denref(r.q_)) == 0)
            throw contract_error("division by zero in rational literal '" + s + "'");
        mpq_canonicalize(r.q_);
        return r;
    }

    bool is_zero() const { return mpq_sgn(q_) == 0; }
    int sign() const { return mpq_sgn(q_); }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }

    // True for 0, -1, -2, ... (exact test).
    bool is_nonpositive_integer() const { return is_integer() && sign() <= 0; }

    long to_long() const { return mpz_get_si(mpq_numref(q_)); }
    double to_double() const { return mpq_get_d(q_); }

    std::string to_string() const {
        char* s = mpq_get_str(nullptr, 10, q_);
        std::string out(s);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(s, out.size() + 1);
        return out;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        Rational r;
        mpq_add(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        Rational r;
        mpq_sub(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        Rational r;
        mpq_mul(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw contract_error("rational division by zero");
        Rational r;
        mpq_div(r.q_, a.q_, b.q_);
        return r;
    }
    Rational operator-() const {
        Rational r;
        mpq_neg(r.q_, q_);
        return r;
    }
    Rational& operator+=(const Rational& o) { mpq_add(q_, q_, o.q_); return *this; }
    Rational& operator-=(const Rational& o) { mpq_sub(q_, q_, o.q_); return *this; }
    Rational& operator*=(const Rational& o) { mpq_mul(q_, q_, o.q_); return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw contract_error("rational division by zero");
        mpq_div(q_, q_, o.q_);
        return *this;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_, b.q_) != 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) >= 0; }

    Rational abs() const {
        Rational r;
        mpq_abs(r.q_, q_);
        return r;
    }

    const mpq_t& raw() const { return q_; }

private:
    mpq_t q_;
};

inline Rational pow_int(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base.is_zero() && e < 0) throw contract_error("zero raised to a negative power");
    Rational acc(1);
    Rational b = base;
    unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    if (e < 0) return Rational(1) / acc;
    return acc;
}

}  // namespace mzv

#endif
