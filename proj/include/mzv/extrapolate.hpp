#ifndef MZV_EXTRAPOLATE_HPP
#define MZV_EXTRAPOLATE_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "mzv/params.hpp"

namespace mzv {

// Shape of the asymptotic tail of a partial-sum sequence. The tails in scope
// expand over the exponent lattice { j + k·δ : j ∈ Z≥0, k ∈ {-1,0,1} } with
// δ = t−1 (or α−1 for the two-parameter series), picking up log factors when
// δ degenerates to 0 or a coupling kernel is present.
struct TailModel {
    std::optional<CBigFloat> delta;  // lattice offset; none = integer lattice
    bool use_log = false;
    int max_log_degree = 1;

    static TailModel plain() { return {}; }
};

struct Extrapolated {
    CBigFloat value;
    double err = 0.0;
    int levels_used = 0;
};

namespace detail {

struct BasisFn {
    CBigFloat exponent;  // decay rate θ: φ(M) = M^{-θ} (ln M)^p
    int log_degree = 0;
    double re;           // cached Re(θ) for ordering
};

inline CBigFloat basis_value(const BasisFn& f, long m, long prec) {
    BigFloat mf(static_cast<long>(m), prec);
    CBigFloat v = pow_c(mf, CBigFloat(-f.exponent.re, -f.exponent.im));
    if (f.log_degree > 0) {
        BigFloat lg = mf.log();
        for (int p = 0; p < f.log_degree; ++p) {
            v.re = v.re * lg;
            v.im = v.im * lg;
        }
    }
    return v;
}

// Square complex solve by Gaussian elimination with partial pivoting.
// Returns false on a (near-)singular matrix.
inline bool solve_dense(std::vector<std::vector<CBigFloat>>& a, std::vector<CBigFloat>& b,
                        std::vector<CBigFloat>& x, long prec) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = abs_double(a[col][col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            double cand = abs_double(a[r][col]);
            if (cand > best) {
                best = cand;
                piv = r;
            }
        }
        if (!(best > 0)) return false;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            std::swap(b[piv], b[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a[r][col].is_zero()) continue;
            CBigFloat f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    x.assign(n, cbf_zero(prec));
    for (std::size_t ri = n; ri-- > 0;) {
        CBigFloat s = b[ri];
        for (std::size_t c = ri + 1; c < n; ++c) s -= a[ri][c] * x[c];
        x[ri] = s / a[ri][ri];
    }
    return true;
}

// Fit the leading decay exponent from the last partial-sum differences:
// v_i − v_{i-1} ≈ c · M_{i-1}^{-θ}, so successive difference magnitudes
// shrink by 2^θ.
inline double fit_theta(const std::vector<double>& diff_abs) {
    std::vector<double> est;
    for (std::size_t i = 1; i < diff_abs.size(); ++i) {
        if (diff_abs[i] > 0 && diff_abs[i - 1] > 0)
            est.push_back(std::log2(diff_abs[i - 1] / diff_abs[i]));
    }
    if (est.empty()) return 1.0;
    // Later ratios are deeper in the asymptotic regime; weight the tail.
    double theta = est.back();
    if (est.size() >= 2) theta = 0.5 * (est.back() + est[est.size() - 2]);
    return std::clamp(theta, 0.05, 16.0);
}

inline std::vector<BasisFn> build_basis(double theta_hat, const TailModel& model,
                                        std::size_t budget, long prec) {
    std::vector<BasisFn> funcs;
    std::vector<CBigFloat> offsets;
    offsets.push_back(cbf_zero(prec));
    bool logs = model.use_log;
    if (model.delta) {
        double da = abs_double(*model.delta);
        if (da < 0.02) {
            logs = true;  // degenerate lattice: δ ≈ 0 turns powers into logs
        } else {
            offsets.push_back(*model.delta);
            offsets.push_back(CBigFloat(-model.delta->re, -model.delta->im));
        }
    }
    const double cutoff = std::max(0.05, theta_hat - 0.45);
    std::vector<BasisFn> cand;
    for (int j = 0; j <= 12; ++j) {
        for (const CBigFloat& off : offsets) {
            CBigFloat e(off.re + BigFloat(static_cast<long>(j), prec), off.im);
            double re = e.re.to_double();
            if (re < cutoff) continue;
            bool dup = false;
            for (const BasisFn& f : cand)
                if (std::fabs(f.re - re) < 1e-9 &&
                    std::fabs(f.exponent.im.to_double() - e.im.to_double()) < 1e-9) {
                    dup = true;
                    break;
                }
            if (dup) continue;
            int pmax = logs ? model.max_log_degree : 0;
            for (int p = pmax; p >= 0; --p) cand.push_back(BasisFn{e, p, re});
        }
    }
    std::stable_sort(cand.begin(), cand.end(), [](const BasisFn& a, const BasisFn& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.log_degree > b.log_degree;  // bigger asymptotically first
    });
    for (const BasisFn& f : cand) {
        if (funcs.size() >= budget) break;
        funcs.push_back(f);
    }
    return funcs;
}

// Solve v_i = C + Σ_f c_f φ_f(M_i) for C over the given points.
inline std::optional<CBigFloat> solve_for_limit(const std::vector<long>& ms,
                                                const std::vector<CBigFloat>& vs,
                                                const std::vector<BasisFn>& funcs, long prec) {
    const std::size_t n = ms.size();
    const std::size_t nf = funcs.size();
    if (nf + 1 > n) return std::nullopt;
    // Columns are normalized by their value at the largest M so pivoting sees
    // comparable magnitudes.
    std::vector<CBigFloat> col_scale;
    col_scale.reserve(nf);
    for (const BasisFn& f : funcs) col_scale.push_back(basis_value(f, ms.back(), prec));
    std::vector<std::vector<CBigFloat>> a(n, std::vector<CBigFloat>(nf + 1, cbf_zero(prec)));
    std::vector<CBigFloat> b = vs;
    for (std::size_t i = 0; i < n; ++i) {
        a[i][0] = cbf_one(prec);
        for (std::size_t f = 0; f < nf; ++f)
            a[i][f + 1] = basis_value(funcs[f], ms[i], prec) / col_scale[f];
    }
    // Square system: if we have more points than unknowns, keep the largest-M
    // points (deepest in the asymptotic regime).
    if (n > nf + 1) {
        std::size_t drop = n - (nf + 1);
        a.erase(a.begin(), a.begin() + static_cast<long>(drop));
        b.erase(b.begin(), b.begin() + static_cast<long>(drop));
    }
    std::vector<CBigFloat> x;
    if (!solve_dense(a, b, x, prec)) return std::nullopt;
    return x[0];
}

}  // namespace detail

// Generalized Richardson extrapolation of partial sums at geometrically
// spaced truncations (ratio 2). The tail is modeled on the lattice described
// by `model`, the leading decay is fitted from the last differences, and the
// reported error is the distance between the two highest extrapolation
// orders.
inline Extrapolated extrapolate_points(const std::vector<long>& ms,
                                       const std::vector<CBigFloat>& vs,
                                       const TruncationPolicy& pol,
                                       const TailModel& model = TailModel::plain()) {
    if (ms.empty() || ms.size() != vs.size()) throw contract_error("extrapolation needs points");
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (ms[i] <= 0) throw contract_error("truncation points must be positive");
        if (i > 0 && ms[i] != 2 * ms[i - 1])
            throw contract_error("truncation points must grow geometrically with ratio 2");
    }
    const long prec = pol.precision_bits;
    const std::size_t n = ms.size();
    if (n == 1) {
        Extrapolated out{vs[0], pol.target_eps * std::max(1.0, abs_double(vs[0])), 1};
        return out;
    }

    double vmax = 0.0;
    for (const auto& v : vs) vmax = std::max(vmax, abs_double(v));
    const double floor_err = std::ldexp(std::max(vmax, 1e-300), -static_cast<int>(prec) + 12);

    std::vector<double> diff_abs;
    diff_abs.reserve(n - 1);
    bool all_tiny = true;
    for (std::size_t i = 1; i < n; ++i) {
        double d = abs_double(vs[i] - vs[i - 1]);
        diff_abs.push_back(d);
        if (d > floor_err) all_tiny = false;
    }
    if (all_tiny) {
        double worst = *std::max_element(diff_abs.begin(), diff_abs.end());
        return Extrapolated{vs.back(), worst, static_cast<int>(n)};
    }

    const double theta_hat = detail::fit_theta(diff_abs);
    auto funcs = detail::build_basis(theta_hat, model, n - 1, prec);

    std::optional<CBigFloat> full;
    while (!funcs.empty()) {
        full = detail::solve_for_limit(ms, vs, funcs, prec);
        if (full) break;
        funcs.pop_back();  // singular system: retry with a smaller basis
    }
    if (!full) {
        // No usable basis; fall back to the raw last value with the last
        // difference as the error.
        return Extrapolated{vs.back(), diff_abs.back(), static_cast<int>(n)};
    }

    // One order lower: drop the smallest-M point and the weakest function.
    std::optional<CBigFloat> lower;
    if (n >= 3 && funcs.size() >= 1) {
        std::vector<long> ms2(ms.begin() + 1, ms.end());
        std::vector<CBigFloat> vs2(vs.begin() + 1, vs.end());
        std::vector<detail::BasisFn> f2 = funcs;
        if (!f2.empty()) f2.pop_back();
        while (!f2.empty()) {
            lower = detail::solve_for_limit(ms2, vs2, f2, prec);
            if (lower) break;
            f2.pop_back();
        }
        if (!lower) lower = detail::solve_for_limit(ms2, vs2, {}, prec);
    }

    double err = floor_err;
    if (lower) err = std::max(abs_double(*full - *lower), floor_err);
    else err = std::max(diff_abs.back(), floor_err);
    return Extrapolated{*full, err, static_cast<int>(n)};
}

// Spec-level convenience over ComplexValue partial sums.
inline SeriesValue extrapolate(const std::vector<std::pair<long, ComplexValue>>& partials,
                               const TruncationPolicy& pol,
                               const TailModel& model = TailModel::plain()) {
    std::vector<long> ms;
    std::vector<CBigFloat> vs;
    ms.reserve(partials.size());
    vs.reserve(partials.size());
    for (const auto& [m, v] : partials) {
        ms.push_back(m);
        vs.push_back(v.to_cbf(pol.precision_bits));
    }
    Extrapolated e = extrapolate_points(ms, vs, pol, model);
    SeriesValue sv;
    sv.value = e.value.im.is_zero() ? ComplexValue(e.value.re) : ComplexValue(e.value);
    sv.err = ErrorBound(e.err);
    sv.terms_used = ms.empty() ? 0 : ms.back();
    sv.levels_used = e.levels_used;
    return sv;
}

}  // namespace mzv

#endif
