#pragma once

// Recentered Taylor coefficients a_n(zeta) = g^(n)(zeta)/n! via the binomial
// shift series  a_n(zeta) = sum_m C(n+m, m) a_{n+m} zeta^m,  with an
// empirical geometric-ratio tail certificate.  Also the derived quantities:
// derivative log-magnitudes, circle maxima of |g^(n)|, and the sharp
// derivative majorant (g#)^(n)(r).

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include "efg/coeffs.hpp"
#include "efg/errors.hpp"
#include "efg/growth.hpp"
#include "efg/xarith.hpp"

namespace efg {

struct RecenterPolicy {
    double eps_rel = 1e-14;
    double eps_abs = 1e-300;
    index_t max_terms = 40000;
};

struct CertifiedValue {
    XComplex value;
    XReal tail_bound; // absolute truncation bound; +inf sentinel = not certified
    index_t terms_used = 0;

    bool certified() const { return !tail_bound.is_inf(); }
};

// Terms are accumulated until 30 consecutive increments are below
// eps_rel*|partial| + eps_abs while the per-term decay has stayed at ratio
// <= 1/4 per unit index (zero terms pass; a nonzero term after a run of z
// zeros must have dropped by 4^{z+1} against the previous nonzero term).
// Under that certificate the remaining tail is geometrically dominated:
//   tail <= |t_nz| * 4^{-(m_end - m_nz)} * (1/3), doubled for safety,
// where t_nz is the last nonzero term.  Hitting max_terms first returns the
// +inf tail sentinel and the caller decides.
inline CertifiedValue recentered_coeff(const CoefficientSource& src, std::complex<double> zeta,
                                       index_t n, const RecenterPolicy& policy = {}) {
    if (n < 0) throw BadParam("recentered_coeff: n must be >= 0");
    if (!(policy.eps_rel > 0.0) || !(policy.eps_abs > 0.0) || policy.max_terms < 1)
        throw BadParam("recentered_coeff: policy fields must be positive");
    CertifiedValue out;
    if (zeta == std::complex<double>(0.0, 0.0)) {
        out.value = src.coeff(n);
        out.tail_bound = XReal::zero();
        out.terms_used = 1;
        return out;
    }
    const double ln_zeta = std::log(std::abs(zeta));
    const double arg_zeta = std::arg(zeta);
    const double lgn = ln_factorial(n);
    const double ln4 = std::log(4.0);

    XComplex partial;
    int streak = 0;
    bool have_nz = false;
    double last_nz_ln = 0.0;   // ln|last nonzero term|
    index_t last_nz_m = 0;
    index_t m_end = 0;

    for (index_t m = 0; m < policy.max_terms; ++m) {
        m_end = m;
        out.terms_used = m + 1;
        const XComplex a = src.coeff(n + m);
        XComplex term;
        if (!a.is_zero()) {
            // C(n+m, m) * zeta^m folded in log space
            const double lnC = ln_factorial(n + m) - ln_factorial(m) - lgn;
            const double md = static_cast<double>(m);
            term = xc_mul(a, xc_from_polar_log(lnC + md * ln_zeta, md * arg_zeta));
        }
        bool ratio_ok;
        double term_ln = -kInf;
        if (term.is_zero()) {
            ratio_ok = true;
        } else {
            term_ln = xc_log_abs(term);
            if (!have_nz) {
                ratio_ok = false; // no decay established yet
            } else {
                const double gap = static_cast<double>(m - last_nz_m);
                ratio_ok = (term_ln - last_nz_ln) <= -gap * ln4;
            }
            have_nz = true;
            last_nz_ln = term_ln;
            last_nz_m = m;
        }
        partial = xc_add(partial, term);
        // increment smallness: |term| < eps_rel*|partial| + eps_abs
        const double thresh_ln =
            std::max(partial.is_zero() ? -kInf : xc_log_abs(partial) + std::log(policy.eps_rel),
                     std::log(policy.eps_abs));
        const bool small = term.is_zero() || term_ln < thresh_ln;
        if (small && ratio_ok)
            ++streak;
        else
            streak = 0;
        if (streak >= 30) {
            out.value = partial;
            if (!have_nz) {
                out.tail_bound = XReal::zero(); // the series never produced a term
            } else {
                const double decay = -static_cast<double>(m_end - last_nz_m) * ln4;
                out.tail_bound = xr_from_ln(last_nz_ln + decay + std::log(2.0 / 3.0));
            }
            return out;
        }
    }
    out.value = partial;
    out.tail_bound = XReal::infinity();
    return out;
}

// ---------------------------------------------------------------------------
// ln|g^(n)(z)|.  Exact zeros and certified-ambiguous values are distinct
// outcomes: epsilon^{1/(n ln n)} -> 1, so a "tiny" magnitude poisons the
// theta-style limsups while a provable zero legitimately contributes 0.
// ---------------------------------------------------------------------------
struct LogAbsResult {
    enum class Kind { finite, exact_zero, ambiguous } kind = Kind::finite;
    double value = 0.0; // ln|g^(n)(z)| when finite, -inf for exact_zero

    bool usable() const { return kind != Kind::ambiguous; }
    double ln() const { return kind == Kind::exact_zero ? -kInf : value; }
};

inline LogAbsResult derivative_log_abs(const CoefficientSource& src, std::complex<double> z,
                                       index_t n, const RecenterPolicy& policy = {}) {
    LogAbsResult r;
    if (src.has_derivative_exact()) {
        const XComplex v = src.derivative_exact(z, n);
        if (v.is_zero()) {
            r.kind = LogAbsResult::Kind::exact_zero;
            r.value = -kInf;
        } else {
            r.value = xc_log_abs(v);
        }
        return r;
    }
    const CertifiedValue c = recentered_coeff(src, z, n, policy);
    if (!c.certified()) {
        r.kind = LogAbsResult::Kind::ambiguous;
        return r;
    }
    if (c.value.is_zero() && c.tail_bound.is_zero()) {
        r.kind = LogAbsResult::Kind::exact_zero;
        r.value = -kInf;
        return r;
    }
    const XReal mag = xr_abs(c.value);
    if (!xr_less(c.tail_bound, mag)) { // certified interval contains 0
        r.kind = LogAbsResult::Kind::ambiguous;
        return r;
    }
    r.value = ln_factorial(n) + xr_ln(mag);
    return r;
}

// ---------------------------------------------------------------------------
// m_n(r) lower bound: max of |g^(n)| over S equispaced points of |z| = r
// (the disk max is attained on the circle).  Ambiguous samples are skipped;
// the error propagates only if every sample is ambiguous.
// ---------------------------------------------------------------------------
inline XReal max_derivative_on_circle(const CoefficientSource& src, double r, index_t n,
                                      index_t samples, const RecenterPolicy& policy = {}) {
    if (samples < 64) throw BadParam("max_derivative_on_circle requires S >= 64");
    if (!(r > 0.0)) throw DomainError("max_derivative_on_circle requires r > 0");
    XReal best = XReal::zero();
    index_t ambiguous = 0;
    bool any = false;
    const double two_pi = 6.28318530717958647692528676655900577;
    for (index_t j = 0; j < samples; ++j) {
        const double phi = two_pi * static_cast<double>(j) / static_cast<double>(samples);
        const std::complex<double> z = std::polar(r, phi);
        const LogAbsResult la = derivative_log_abs(src, z, n, policy);
        if (!la.usable()) {
            ++ambiguous;
            continue;
        }
        any = true;
        if (la.kind == LogAbsResult::Kind::finite)
            best = xr_max(best, xr_from_ln(la.value));
    }
    if (!any && ambiguous == samples)
        throw ZeroAmbiguous("every circle sample is ambiguous at the certified tolerance");
    return best;
}

// ---------------------------------------------------------------------------
// (g#)^(n)(r) = sum_m ((n+m)!/m!) |a_{n+m}| r^m, partial sums in XReal with
// the same stagnation flag as sharp_value.
// ---------------------------------------------------------------------------
inline SharpSum sharp_derivative(const CoefficientSource& src, double r, index_t n, index_t N) {
    if (N < 1) throw BadParam("sharp_derivative requires N >= 1");
    if (!(r > 0.0)) throw DomainError("sharp_derivative requires r > 0");
    SharpSum out;
    const double lnr = std::log(r);
    int small_streak = 0;
    for (index_t m = 0; m <= N; ++m) {
        const double la = src.log_abs(n + m);
        if (la == -kInf) continue;
        const double md = static_cast<double>(m);
        const double ln_term = ln_factorial(n + m) - ln_factorial(m) + la + md * lnr;
        const XReal term = xr_from_ln(ln_term);
        ++out.terms;
        if (!out.value.is_zero() && xr_less(term, xr_scale(out.value, 1e-16)))
            ++small_streak;
        else
            small_streak = 0;
        out.value = xr_add(out.value, term);
        if (small_streak >= 20) {
            out.stagnant = true;
            break;
        }
    }
    return out;
}

inline SharpSum sharp_derivative_auto(const CoefficientSource& src, double r, index_t n,
                                      index_t n0 = 256, index_t cap = 2000000) {
    index_t N = n0;
    for (;;) {
        SharpSum s = sharp_derivative(src, r, n, N);
        if (s.stagnant || N >= cap) return s;
        N *= 2;
    }
}

} // namespace efg
