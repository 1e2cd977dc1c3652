#pragma once

// Order and type estimators from Taylor coefficients and from the maximum
// modulus of the sharp majorant, plus the theta normalization of the order
// and the scaled-tail / attainment diagnostics.
//
// Finite truncations can only ever produce window sups, so every "limsup"
// here is a sup over an explicit index window; callers see the window, the
// per-index series and a bias note.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "efg/coeffs.hpp"
#include "efg/errors.hpp"
#include "efg/xarith.hpp"

namespace efg {

struct Window {
    index_t lo = 0;
    index_t hi = 0; // inclusive
};

struct GrowthEstimate {
    double value = 0.0;
    Window window;
    enum class Method { window_sup, regression } method = Method::window_sup;
    std::vector<std::pair<index_t, double>> series; // (n, term); nonzero-coefficient indices only
    std::string bias_note;
    index_t skipped_nonpositive = 0; // indices with -ln|a_n| <= 0 (small-n artifacts)
};

// ---------------------------------------------------------------------------
// Order from coefficients: sup over the window of  n ln n / (-ln|a_n|).
// Zero coefficients are skipped silently; indices with -ln|a_n| <= 0 are
// skipped with a counter (possible only for finitely many n of an entire
// function).
// ---------------------------------------------------------------------------
inline GrowthEstimate order_from_coeffs(const CoefficientSource& src, Window w) {
    if (w.lo < 2) throw BadParam("order window must start at n >= 2");
    if (w.hi < w.lo) throw BadParam("empty order window");
    GrowthEstimate est;
    est.window = w;
    est.method = GrowthEstimate::Method::window_sup;
    double sup = -kInf;
    for (index_t n = w.lo; n <= w.hi; ++n) {
        const double la = src.log_abs(n);
        if (la == -kInf) continue;
        if (-la <= 0.0) {
            ++est.skipped_nonpositive;
            continue;
        }
        const double nn = static_cast<double>(n);
        const double term = nn * std::log(nn) / (-la);
        est.series.emplace_back(n, term);
        sup = std::max(sup, term);
    }
    if (est.series.empty())
        throw EmptyWindow("no usable coefficients in order window");
    est.value = sup;
    est.bias_note = "window sup of n ln n / -ln|a_n|; upper-biased O(1/ln n) for finite-order sources";
    return est;
}

// ---------------------------------------------------------------------------
// Regression accelerant: least squares of ln|a_n| on {n ln n, n, 1}; the
// order estimate is -1/slope of the n ln n basis term.  Solved by modified
// Gram-Schmidt QR (the basis columns are nearly collinear, normal equations
// would lose too much precision).
// ---------------------------------------------------------------------------
namespace detail {

inline std::vector<double> qr_least_squares(std::vector<std::vector<double>> cols,
                                            std::vector<double> y) {
    const std::size_t m = cols.size();
    const std::size_t n = y.size();
    std::vector<std::vector<double>> q = cols;
    std::vector<std::vector<double>> r(m, std::vector<double>(m, 0.0));
    for (std::size_t j = 0; j < m; ++j) {
        for (int pass = 0; pass < 2; ++pass) { // re-orthogonalize once
            for (std::size_t i = 0; i < j; ++i) {
                double d = 0.0;
                for (std::size_t t = 0; t < n; ++t) d += q[i][t] * q[j][t];
                r[i][j] += d;
                for (std::size_t t = 0; t < n; ++t) q[j][t] -= d * q[i][t];
            }
        }
        double nrm = 0.0;
        for (std::size_t t = 0; t < n; ++t) nrm += q[j][t] * q[j][t];
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) throw DegenerateFit("collinear regression basis");
        r[j][j] = nrm;
        for (std::size_t t = 0; t < n; ++t) q[j][t] /= nrm;
    }
    // solve R c = Q^T y
    std::vector<double> qty(m, 0.0), c(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t t = 0; t < n; ++t) qty[i] += q[i][t] * y[t];
    for (std::size_t i = m; i-- > 0;) {
        double s = qty[i];
        for (std::size_t j = i + 1; j < m; ++j) s -= r[i][j] * c[j];
        c[i] = s / r[i][i];
    }
    return c;
}

} // namespace detail

inline GrowthEstimate order_regression(const CoefficientSource& src, Window w) {
    if (w.lo < 2) throw BadParam("order window must start at n >= 2");
    std::vector<index_t> ns;
    std::vector<double> ys;
    for (index_t n = w.lo; n <= w.hi; ++n) {
        const double la = src.log_abs(n);
        if (la == -kInf) continue;
        ns.push_back(n);
        ys.push_back(la);
    }
    if (ns.size() < 8)
        throw DegenerateFit("order regression needs >= 8 nonzero-coefficient indices");
    std::vector<std::vector<double>> cols(3, std::vector<double>(ns.size()));
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double nn = static_cast<double>(ns[i]);
        cols[0][i] = nn * std::log(nn);
        cols[1][i] = nn;
        cols[2][i] = 1.0;
    }
    const std::vector<double> c = detail::qr_least_squares(std::move(cols), ys);
    if (!(c[0] < 0.0))
        throw DegenerateFit("order regression slope on n ln n is nonnegative");
    GrowthEstimate est;
    est.window = w;
    est.method = GrowthEstimate::Method::regression;
    est.value = -1.0 / c[0];
    for (std::size_t i = 0; i < ns.size(); ++i) est.series.emplace_back(ns[i], ys[i]);
    est.bias_note = "least squares of ln|a_n| on {n ln n, n, 1}; series holds the fitted data";
    return est;
}

// ---------------------------------------------------------------------------
// Type from coefficients given rho: sup over the window of
//   (1/(e rho)) n |a_n|^{rho/n},   computed in log space.
// ---------------------------------------------------------------------------
inline double type_term(const CoefficientSource& src, index_t n, double rho) {
    const double la = src.log_abs(n);
    if (la == -kInf) return 0.0;
    const double nn = static_cast<double>(n);
    return std::exp(std::log(nn) + (rho / nn) * la - 1.0) / rho;
}

inline GrowthEstimate type_from_coeffs(const CoefficientSource& src, double rho, Window w) {
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw RhoOutOfRange("type requires 0 < rho < inf");
    if (w.lo < 1 || w.hi < w.lo) throw BadParam("bad type window");
    GrowthEstimate est;
    est.window = w;
    est.method = GrowthEstimate::Method::window_sup;
    double sup = -kInf;
    for (index_t n = w.lo; n <= w.hi; ++n) {
        if (src.log_abs(n) == -kInf) continue;
        const double term = type_term(src, n, rho);
        est.series.emplace_back(n, term);
        sup = std::max(sup, term);
    }
    if (est.series.empty()) throw EmptyWindow("no nonzero coefficients in type window");
    est.value = sup;
    est.bias_note = "window sup of (1/(e rho)) n |a_n|^{rho/n}";
    return est;
}

// ---------------------------------------------------------------------------
// Sharp operator partial sums: g#(r) = sum |a_n| r^n.
// ---------------------------------------------------------------------------
struct SharpSum {
    XReal value;
    bool stagnant = false; // last 20 terms each added < 1e-16 relative
    index_t terms = 0;
};

inline SharpSum sharp_value(const CoefficientSource& src, double r, index_t N) {
    if (N < 1) throw BadParam("sharp_value requires N >= 1");
    if (!(r > 0.0)) throw DomainError("sharp_value requires r > 0");
    SharpSum out;
    const double lnr = std::log(r);
    int small_streak = 0;
    for (index_t n = 0; n <= N; ++n) {
        const double la = src.log_abs(n);
        if (la == -kInf) continue;
        const XReal term = xr_from_ln(la + static_cast<double>(n) * lnr);
        const XReal next = xr_add(out.value, term);
        ++out.terms;
        // relative stagnation: term < 1e-16 * partial
        if (!out.value.is_zero() && xr_less(term, xr_scale(out.value, 1e-16)))
            ++small_streak;
        else
            small_streak = 0;
        out.value = next;
        if (small_streak >= 20) {
            out.stagnant = true;
            break;
        }
    }
    return out;
}

// Doubling driver used by the max-modulus estimators and the CLI.
inline SharpSum sharp_value_auto(const CoefficientSource& src, double r,
                                 index_t n0 = 256, index_t cap = 2000000) {
    index_t N = n0;
    for (;;) {
        SharpSum s = sharp_value(src, r, N);
        if (s.stagnant || N >= cap) return s;
        N *= 2;
    }
}

// ---------------------------------------------------------------------------
// Order/type from the maximum modulus of g#.
// ---------------------------------------------------------------------------
inline GrowthEstimate order_from_max_modulus(const CoefficientSource& src,
                                             const std::vector<double>& r_grid,
                                             index_t term_cap = 2000000) {
    if (r_grid.size() < 4)
        throw GridTooSmall("order_from_max_modulus needs >= 4 grid points");
    for (std::size_t i = 1; i < r_grid.size(); ++i)
        if (!(r_grid[i] > r_grid[i - 1]))
            throw BadParam("r grid must be strictly increasing");
    if (!(r_grid.back() >= 8.0 * r_grid.front()))
        throw GridTooSmall("r grid must span about a decade (>= 8x)");
    std::vector<double> xs, ys;
    GrowthEstimate est;
    for (double r : r_grid) {
        const SharpSum s = sharp_value_auto(src, r, 256, term_cap);
        const double ln_g = xr_ln(s.value);
        if (ln_g > 1.0) { // g#(r) > e, double log positive
            xs.push_back(std::log(r));
            ys.push_back(std::log(ln_g));
            est.series.emplace_back(static_cast<index_t>(std::llround(r)), std::log(ln_g));
        }
    }
    if (xs.size() < 2)
        throw NotInAsymptoticRegime("g#(r) <= e on the whole grid");
    // simple linear regression slope
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    est.value = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    est.window = {static_cast<index_t>(std::llround(r_grid.front())),
                  static_cast<index_t>(std::llround(r_grid.back()))};
    est.method = GrowthEstimate::Method::regression;
    est.bias_note = "slope of ln ln g#(r) vs ln r over grid points with g#(r) > e";
    return est;
}

inline GrowthEstimate type_from_max_modulus(const CoefficientSource& src, double rho,
                                            const std::vector<double>& r_grid,
                                            index_t term_cap = 2000000) {
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw RhoOutOfRange("type requires 0 < rho < inf");
    if (r_grid.size() < 4)
        throw GridTooSmall("type_from_max_modulus needs >= 4 grid points");
    GrowthEstimate est;
    double best = -kInf;
    double last = 0.0, prev = 0.0;
    for (double r : r_grid) {
        const SharpSum s = sharp_value_auto(src, r, 256, term_cap);
        const double v = xr_ln(s.value) / std::pow(r, rho);
        est.series.emplace_back(static_cast<index_t>(std::llround(r)), v);
        prev = last;
        last = v;
        best = std::max(best, v);
    }
    est.value = best;
    est.window = {static_cast<index_t>(std::llround(r_grid.front())),
                  static_cast<index_t>(std::llround(r_grid.back()))};
    est.method = GrowthEstimate::Method::window_sup;
    est.bias_note = last > prev ? "trend at largest r: growing" : "trend at largest r: settled";
    return est;
}

// ---------------------------------------------------------------------------
// theta = e^{1 - 1/rho}: bounded, strictly increasing re-encoding of the
// order, with theta(0) = 0 and theta(inf) = e.
// ---------------------------------------------------------------------------
struct ThetaValue {
    double theta = 0.0;
    double rho = 0.0;
};

inline ThetaValue theta_of_rho(double rho) {
    if (std::isnan(rho) || rho < 0.0) throw DomainError("theta_of_rho: rho must be in [0, inf]");
    ThetaValue t;
    t.rho = rho;
    if (rho == 0.0) t.theta = 0.0;
    else if (std::isinf(rho)) t.theta = std::exp(1.0);
    else t.theta = std::exp(1.0 - 1.0 / rho);
    return t;
}

inline double rho_of_theta(double theta) {
    const double e1 = std::exp(1.0);
    if (std::isnan(theta) || theta < 0.0 || theta > e1)
        throw DomainError("rho_of_theta: theta must be in [0, e]");
    if (theta == 0.0) return 0.0;
    if (theta == e1) return kInf;
    return 1.0 / (1.0 - std::log(theta));
}

// ---------------------------------------------------------------------------
// Remark-style diagnostics.
// ---------------------------------------------------------------------------

// Scaled-tail sequence (n, n |a_n|^{rho'/n}) over nonzero coefficients up to K.
// Tends to 0 when rho' exceeds the order and to infinity along a subsequence
// when it undershoots; no verdict here, callers inspect the dichotomy.
inline std::vector<std::pair<index_t, double>> scaled_tail_profile(const CoefficientSource& src,
                                                                   double rho_prime, index_t K) {
    if (!(rho_prime > 0.0)) throw BadParam("scaled_tail_profile requires rho' > 0");
    std::vector<std::pair<index_t, double>> out;
    for (index_t n = 1; n <= K; ++n) {
        const double la = src.log_abs(n);
        if (la == -kInf) continue;
        const double nn = static_cast<double>(n);
        out.emplace_back(n, std::exp(std::log(nn) + (rho_prime / nn) * la));
    }
    return out;
}

// Which window indices attain the order sup and the type sup (within tol).
// The window is the module default [K/2, K]; the finite-truncation analogue
// of the "type-attaining implies order-attaining" inclusion is evaluated only
// when the type sup is bounded away from zero.
struct AttainmentReport {
    std::vector<index_t> order_attaining;
    std::vector<index_t> type_attaining;
    bool inclusion_holds = false;
    bool inclusion_evaluated = false;
    double order_sup = 0.0;
    double type_sup = 0.0;
};

inline AttainmentReport attainment_analysis(const CoefficientSource& src, double rho,
                                            index_t K, double tol) {
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw RhoOutOfRange("attainment analysis requires 0 < rho < inf");
    const Window w{std::max<index_t>(2, K / 2), K};
    const GrowthEstimate order = order_from_coeffs(src, w);
    const GrowthEstimate type = type_from_coeffs(src, rho, w);
    AttainmentReport rep;
    rep.order_sup = order.value;
    rep.type_sup = type.value;
    for (const auto& [n, term] : order.series)
        if (term >= order.value - tol) rep.order_attaining.push_back(n);
    for (const auto& [n, term] : type.series)
        if (term >= type.value - tol) rep.type_attaining.push_back(n);
    rep.inclusion_evaluated = rep.type_sup > 1e-12;
    if (rep.inclusion_evaluated) {
        rep.inclusion_holds = std::includes(rep.order_attaining.begin(), rep.order_attaining.end(),
                                            rep.type_attaining.begin(), rep.type_attaining.end());
    }
    return rep;
}

} // namespace efg
