#ifndef MZV_RING_HPP
#define MZV_RING_HPP

#include "mzv/params.hpp"

namespace mzv {
namespace ring {

// The series kernels are templates over a scalar ring S, instantiated with
// Rational, BigFloat, Cplx<Rational> or Cplx<BigFloat>. Real instantiations
// are used whenever all parameters are real; they do a quarter of the work.

template <typename S>
struct is_cplx : std::false_type {};
template <typename T>
struct is_cplx<Cplx<T>> : std::true_type {};

template <typename S>
inline S make_zero(long prec) {
    if constexpr (std::is_same_v<S, Rational>) {
        (void)prec;
        return Rational();
    } else if constexpr (std::is_same_v<S, BigFloat>) {
        return BigFloat(prec);
    } else if constexpr (std::is_same_v<S, Cplx<Rational>>) {
        (void)prec;
        return CRational(Rational(), Rational());
    } else {
        return cbf_zero(prec);
    }
}

template <typename S>
inline S make_one(long prec) {
    if constexpr (std::is_same_v<S, Rational>) {
        (void)prec;
        return Rational(1);
    } else if constexpr (std::is_same_v<S, BigFloat>) {
        return BigFloat(1L, prec);
    } else if constexpr (std::is_same_v<S, Cplx<Rational>>) {
        (void)prec;
        return CRational(Rational(1), Rational());
    } else {
        return cbf_one(prec);
    }
}

template <typename S>
inline S from_value(const ComplexValue& v, long prec) {
    if constexpr (std::is_same_v<S, Rational>) {
        (void)prec;
        if (!v.is_real()) throw contract_error("real ring requires a real value");
        return v.crational().re;
    } else if constexpr (std::is_same_v<S, BigFloat>) {
        if (!v.is_real()) throw contract_error("real ring requires a real value");
        return v.backend() == Backend::RATIONAL ? BigFloat(v.crational().re, prec)
                                                : v.cbigfloat().re;
    } else if constexpr (std::is_same_v<S, Cplx<Rational>>) {
        (void)prec;
        return v.crational();
    } else {
        return v.to_cbf(prec);
    }
}

template <typename S>
inline ComplexValue to_value(const S& x) {
    if constexpr (std::is_same_v<S, Rational>) {
        return ComplexValue(x);
    } else if constexpr (std::is_same_v<S, BigFloat>) {
        return ComplexValue(x);
    } else if constexpr (std::is_same_v<S, Cplx<Rational>>) {
        return ComplexValue(x);
    } else {
        return ComplexValue(x);
    }
}

template <typename S>
inline S shifted(const S& x, long n) {
    if constexpr (std::is_same_v<S, Rational>) {
        return x + Rational(n);
    } else if constexpr (std::is_same_v<S, BigFloat>) {
        S r = x;
        r += n;
        return r;
    } else if constexpr (std::is_same_v<S, Cplx<Rational>>) {
        return S(x.re + Rational(n), x.im);
    } else {
        S r = x;
        r.re += n;
        return r;
    }
}

template <typename S>
inline double abs_estimate(const S& x) {
    if constexpr (std::is_same_v<S, Rational>) {
        return std::fabs(x.to_double());
    } else if constexpr (std::is_same_v<S, BigFloat>) {
        return std::fabs(x.to_double());
    } else if constexpr (std::is_same_v<S, Cplx<Rational>>) {
        double r = x.re.to_double(), i = x.im.to_double();
        return std::sqrt(r * r + i * i);
    } else {
        return abs_double(x);
    }
}

template <typename S>
inline S one_like(const S& x) {
    if constexpr (std::is_same_v<S, BigFloat>)
        return BigFloat(1L, x.prec());
    else if constexpr (std::is_same_v<S, Cplx<BigFloat>>)
        return cbf_one(x.re.prec());
    else if constexpr (std::is_same_v<S, Rational>)
        return Rational(1);
    else
        return CRational(Rational(1), Rational());
}

template <typename S>
inline S pow_i(const S& base, long e) {
    S acc = one_like(base);
    if (e == 0) return acc;
    bool invert = e < 0;
    unsigned long n = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    S sq = base;
    while (n) {
        if (n & 1) acc = acc * sq;
        n >>= 1;
        if (n) sq = sq * sq;
    }
    if (!invert) return acc;
    return one_like(base) / acc;
}

}  // namespace ring
}  // namespace mzv

#endif
