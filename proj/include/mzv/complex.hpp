#ifndef MZV_COMPLEX_HPP
#define MZV_COMPLEX_HPP

#include <cmath>
#include <type_traits>
#include <utility>

#include "mzv/bigfloat.hpp"
#include "mzv/rational.hpp"

namespace mzv {

// Rectangular complex number over an exact or floating scalar ring T.
// With T = Rational this is the Gaussian rationals; with T = BigFloat the
// usual arbitrary-precision complex numbers.
template <typename T>
struct Cplx {
    T re;
    T im;

    Cplx() = default;
    Cplx(T r, T i) : re(std::move(r)), im(std::move(i)) {}
    explicit Cplx(T r) : re(std::move(r)), im(zero_like(re)) {}

    static T zero_like(const T& x) {
        if constexpr (std::is_same_v<T, BigFloat>)
            return BigFloat(x.prec());
        else
            return T();
    }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }

    Cplx conj() const { return Cplx(re, -im); }

    friend Cplx operator+(const Cplx& a, const Cplx& b) { return Cplx(a.re + b.re, a.im + b.im); }
    friend Cplx operator-(const Cplx& a, const Cplx& b) { return Cplx(a.re - b.re, a.im - b.im); }
    Cplx operator-() const { return Cplx(-re, -im); }

    friend Cplx operator*(const Cplx& a, const Cplx& b) {
        return Cplx(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend Cplx operator/(const Cplx& a, const Cplx& b) {
        T n = b.re * b.re + b.im * b.im;
        if (n.is_zero()) throw contract_error("complex division by zero");
        return Cplx((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
    }
    Cplx& operator+=(const Cplx& o) { re += o.re; im += o.im; return *this; }
    Cplx& operator-=(const Cplx& o) { re -= o.re; im -= o.im; return *this; }
    Cplx& operator*=(const Cplx& o) { *this = *this * o; return *this; }
    Cplx& operator/=(const Cplx& o) { *this = *this / o; return *this; }

    friend bool operator==(const Cplx& a, const Cplx& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Cplx& a, const Cplx& b) { return !(a == b); }

    T norm_sq() const { return re * re + im * im; }
};

using CRational = Cplx<Rational>;
using CBigFloat = Cplx<BigFloat>;

inline double abs_double(const CBigFloat& z) {
    double r = z.re.to_double(), i = z.im.to_double();
    return std::sqrt(r * r + i * i);
}

inline Cplx<BigFloat> to_bigfloat(const Cplx<Rational>& q, long prec) {
    return {BigFloat(q.re, prec), BigFloat(q.im, prec)};
}

inline CBigFloat make_cbf(double re, double im, long prec) {
    return {BigFloat(re, prec), BigFloat(im, prec)};
}

inline CBigFloat cbf_zero(long prec) { return {BigFloat(prec), BigFloat(prec)}; }
inline CBigFloat cbf_one(long prec) { return {BigFloat(1L, prec), BigFloat(prec)}; }

// e^z for complex z, via mpfr exp/cos/sin on the parts.
inline CBigFloat exp_c(const CBigFloat& z) {
    BigFloat m = z.re.exp();
    if (z.im.is_zero()) return {m, BigFloat(z.re.prec())};
    return {m * z.im.cos(), m * z.im.sin()};
}

// base^e for a positive real base and complex exponent e.
inline CBigFloat pow_c(const BigFloat& base, const CBigFloat& e) {
    BigFloat lb = base.log();
    return exp_c({e.re * lb, e.im * lb});
}

}  // namespace mzv

#endif
