#ifndef MZV_SCALAR_HPP
#define MZV_SCALAR_HPP

#include <cctype>
#include <string>
#include <string_view>
#include <variant>

#include "mzv/complex.hpp"

namespace mzv {

enum class Backend { RATIONAL, BIGFLOAT };

inline const char* backend_name(Backend b) {
    return b == Backend::RATIONAL ? "rational" : "bigfloat";
}

// One number of the configured backend: an exact rational or an
// arbitrary-precision float.
class Scalar {
public:
    Scalar() : v_(Rational()) {}
    explicit Scalar(Rational q) : v_(std::move(q)) {}
    explicit Scalar(BigFloat f) : v_(std::move(f)) {}

    Backend backend() const {
        return std::holds_alternative<Rational>(v_) ? Backend::RATIONAL : Backend::BIGFLOAT;
    }
    const Rational& rational() const {
        if (backend() != Backend::RATIONAL) throw contract_error("scalar is not rational");
        return std::get<Rational>(v_);
    }
    const BigFloat& bigfloat() const {
        if (backend() != Backend::BIGFLOAT) throw contract_error("scalar is not a big-float");
        return std::get<BigFloat>(v_);
    }

    bool is_zero() const {
        return backend() == Backend::RATIONAL ? rational().is_zero() : bigfloat().is_zero();
    }
    double to_double() const {
        return backend() == Backend::RATIONAL ? rational().to_double() : bigfloat().to_double();
    }
    BigFloat to_bigfloat(long prec) const {
        return backend() == Backend::RATIONAL ? BigFloat(rational(), prec) : bigfloat();
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) { return apply(a, b, '+'); }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return apply(a, b, '-'); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) { return apply(a, b, '*'); }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return apply(a, b, '/'); }
    Scalar operator-() const {
        return backend() == Backend::RATIONAL ? Scalar(-rational()) : Scalar(-bigfloat());
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.backend() != b.backend()) return false;
        return a.backend() == Backend::RATIONAL ? a.rational() == b.rational()
                                                : a.bigfloat() == b.bigfloat();
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

private:
    static Scalar apply(const Scalar& a, const Scalar& b, char op) {
        if (a.backend() != b.backend())
            throw contract_error("mixed-backend scalar arithmetic");
        if (a.backend() == Backend::RATIONAL) {
            const Rational &x = a.rational(), &y = b.rational();
            switch (op) {
                case '+': return Scalar(x + y);
                case '-': return Scalar(x - y);
                case '*': return Scalar(x * y);
                default:  return Scalar(x / y);
            }
        }
        const BigFloat &x = a.bigfloat(), &y = b.bigfloat();
        switch (op) {
            case '+': return Scalar(x + y);
            case '-': return Scalar(x - y);
            case '*': return Scalar(x * y);
            default:  return Scalar(x / y);
        }
    }
    std::variant<Rational, BigFloat> v_;
};

// Complex number whose parts share one backend.
class ComplexValue {
public:
    ComplexValue() : v_(CRational()) {}
    explicit ComplexValue(CRational z) : v_(std::move(z)) {}
    explicit ComplexValue(CBigFloat z) : v_(std::move(z)) {}
    explicit ComplexValue(Rational re) : v_(CRational(std::move(re), Rational())) {}
    ComplexValue(Rational re, Rational im) : v_(CRational(std::move(re), std::move(im))) {}
    explicit ComplexValue(BigFloat re) : v_(CBigFloat{re, BigFloat(re.prec())}) {}
    ComplexValue(BigFloat re, BigFloat im) : v_(CBigFloat{std::move(re), std::move(im)}) {}

    Backend backend() const {
        return std::holds_alternative<CRational>(v_) ? Backend::RATIONAL : Backend::BIGFLOAT;
    }
    const CRational& crational() const {
        if (backend() != Backend::RATIONAL) throw contract_error("value is not rational-backed");
        return std::get<CRational>(v_);
    }
    const CBigFloat& cbigfloat() const {
        if (backend() != Backend::BIGFLOAT) throw contract_error("value is not big-float-backed");
        return std::get<CBigFloat>(v_);
    }

    Scalar re() const {
        return backend() == Backend::RATIONAL ? Scalar(crational().re) : Scalar(cbigfloat().re);
    }
    Scalar im() const {
        return backend() == Backend::RATIONAL ? Scalar(crational().im) : Scalar(cbigfloat().im);
    }
    bool is_zero() const {
        return backend() == Backend::RATIONAL ? crational().is_zero() : cbigfloat().is_zero();
    }
    bool is_real() const {
        return backend() == Backend::RATIONAL ? crational().is_real() : cbigfloat().is_real();
    }

    ComplexValue conj() const {
        return backend() == Backend::RATIONAL ? ComplexValue(crational().conj())
                                              : ComplexValue(cbigfloat().conj());
    }

    CBigFloat to_cbf(long prec) const {
        return backend() == Backend::RATIONAL ? to_bigfloat(crational(), prec) : cbigfloat();
    }

    friend ComplexValue operator+(const ComplexValue& a, const ComplexValue& b) { return apply(a, b, '+'); }
    friend ComplexValue operator-(const ComplexValue& a, const ComplexValue& b) { return apply(a, b, '-'); }
    friend ComplexValue operator*(const ComplexValue& a, const ComplexValue& b) { return apply(a, b, '*'); }
    friend ComplexValue operator/(const ComplexValue& a, const ComplexValue& b) { return apply(a, b, '/'); }
    ComplexValue operator-() const {
        return backend() == Backend::RATIONAL ? ComplexValue(-crational()) : ComplexValue(-cbigfloat());
    }
    friend bool operator==(const ComplexValue& a, const ComplexValue& b) {
        if (a.backend() != b.backend()) return false;
        return a.backend() == Backend::RATIONAL ? a.crational() == b.crational()
                                                : a.cbigfloat() == b.cbigfloat();
    }
    friend bool operator!=(const ComplexValue& a, const ComplexValue& b) { return !(a == b); }

private:
    static ComplexValue apply(const ComplexValue& a, const ComplexValue& b, char op) {
        if (a.backend() != b.backend())
            throw contract_error("mixed-backend complex arithmetic");
        if (a.backend() == Backend::RATIONAL) {
            const CRational &x = a.crational(), &y = b.crational();
            switch (op) {
                case '+': return ComplexValue(x + y);
                case '-': return ComplexValue(x - y);
                case '*': return ComplexValue(x * y);
                default:  return ComplexValue(x / y);
            }
        }
        const CBigFloat &x = a.cbigfloat(), &y = b.cbigfloat();
        switch (op) {
            case '+': return ComplexValue(x + y);
            case '-': return ComplexValue(x - y);
            case '*': return ComplexValue(x * y);
            default:  return ComplexValue(x / y);
        }
    }
    std::variant<CRational, CBigFloat> v_;
};

// Heuristic nonnegative error magnitude attached to computed series values.
struct ErrorBound {
    double magnitude = 0.0;

    ErrorBound() = default;
    explicit ErrorBound(double m) : magnitude(m < 0 ? -m : m) {}
    ErrorBound operator+(const ErrorBound& o) const { return ErrorBound(magnitude + o.magnitude); }
    ErrorBound& operator+=(const ErrorBound& o) {
        magnitude += o.magnitude;
        return *this;
    }
    ErrorBound scaled(double f) const { return ErrorBound(magnitude * (f < 0 ? -f : f)); }
};

namespace detail {

struct NumberComponent {
    std::string text;
    bool is_decimal = false;  // contains '.' or an exponent
    bool negative = false;
};

// Scans one signed component of a number literal starting at `pos`.
inline NumberComponent scan_component(std::string_view s, std::size_t& pos) {
    NumberComponent c;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        c.negative = s[pos] == '-';
        ++pos;
    }
    std::size_t start = c.negative ? pos - 1 : pos;  // keep '-', drop '+'
    bool digits_seen = false, slash = false;
    while (pos < s.size()) {
        char ch = s[pos];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits_seen = true;
            ++pos;
        } else if (ch == '.') {
            if (c.is_decimal || slash) throw parse_error("unexpected '.'", pos);
            c.is_decimal = true;
            ++pos;
        } else if (ch == '/') {
            if (slash || c.is_decimal) throw parse_error("unexpected '/'", pos);
            if (!digits_seen) throw parse_error("missing numerator", pos);
            slash = true;
            digits_seen = false;
            ++pos;
        } else if (ch == 'e' || ch == 'E') {
            if (slash) throw parse_error("exponent not allowed in rational literal", pos);
            if (!digits_seen) throw parse_error("missing mantissa", pos);
            c.is_decimal = true;
            ++pos;
            if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
            if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
                throw parse_error("missing exponent digits", pos);
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            break;
        } else {
            break;
        }
    }
    if (!digits_seen) throw parse_error("expected digits", pos);
    c.text = std::string(s.substr(start, pos - start));
    return c;
}

inline Scalar component_to_scalar(const NumberComponent& c, Backend backend, long prec,
                                  std::size_t pos_for_errors) {
    if (backend == Backend::RATIONAL) {
        if (c.is_decimal)
            throw parse_error("decimal literal '" + c.text + "' unsupported under the rational backend",
                              pos_for_errors);
        return Scalar(Rational::from_string(c.text));
    }
    if (c.is_decimal) return Scalar(BigFloat::from_decimal(c.text, prec));
    // Integer or p/q: go through the exact rational so the float is correctly rounded.
    return Scalar(BigFloat(Rational::from_string(c.text), prec));
}

}  // namespace detail

// Parses "3", "-3/4", "1.5", "2.5e-3", "1.5+2i", "1-0.25i".
// Under the RATIONAL backend only integer and p/q components are accepted.
inline ComplexValue parse_number(std::string_view text, Backend backend,
                                 long precision = kDefaultPrecisionBits) {
    std::size_t pos = 0;
    if (text.empty()) throw parse_error("empty numeric literal", 0);
    detail::NumberComponent first = detail::scan_component(text, pos);
    if (pos == text.size()) {
        Scalar re = detail::component_to_scalar(first, backend, precision, 0);
        if (backend == Backend::RATIONAL) return ComplexValue(re.rational(), Rational());
        return ComplexValue(re.bigfloat(), BigFloat(precision));
    }
    if (text[pos] != '+' && text[pos] != '-')
        throw parse_error("unexpected character '" + std::string(1, text[pos]) + "'", pos);
    std::size_t second_start = pos;
    detail::NumberComponent second = detail::scan_component(text, pos);
    if (pos >= text.size() || text[pos] != 'i')
        throw parse_error("expected 'i' after imaginary part", pos);
    ++pos;
    if (pos != text.size()) throw parse_error("trailing characters after 'i'", pos);
    Scalar re = detail::component_to_scalar(first, backend, precision, 0);
    Scalar im = detail::component_to_scalar(second, backend, precision, second_start);
    if (backend == Backend::RATIONAL) return ComplexValue(re.rational(), im.rational());
    return ComplexValue(re.bigfloat(), im.bigfloat());
}

inline std::string format_scalar(const Scalar& s, std::size_t digits) {
    if (digits < 1) throw contract_error("format digits must be >= 1");
    if (s.backend() == Backend::RATIONAL) return s.rational().to_string();
    return s.bigfloat().to_decimal(digits);
}

// Emits text parse_number accepts back: rationals exactly as "p/q", big-floats
// rounded to `digits` significant digits, complex values as "a+bi"/"a-bi".
inline std::string format_number(const ComplexValue& v, std::size_t digits) {
    if (digits < 1) throw contract_error("format digits must be >= 1");
    std::string re = format_scalar(v.re(), digits);
    if (v.is_real()) return re;
    Scalar im = v.im();
    bool neg;
    std::string im_abs;
    if (v.backend() == Backend::RATIONAL) {
        neg = im.rational().sign() < 0;
        im_abs = im.rational().abs().to_string();
    } else {
        neg = im.bigfloat().sign() < 0;
        im_abs = im.bigfloat().abs().to_decimal(digits);
    }
    return re + (neg ? "-" : "+") + im_abs + "i";
}

}  // namespace mzv

#endif
