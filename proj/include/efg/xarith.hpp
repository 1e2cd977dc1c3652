#pragma once

// Extended-exponent complex/real scalars.  Value = mantissa * 2^exp2 with the
// mantissa held in hardware doubles and the binary exponent in a wide signed
// integer, so quantities like lambda^n / n! stay representable for n ~ 1e4
// (exponents ~ n log2 n, far outside the double range).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>

#include "efg/errors.hpp"

namespace efg {

inline constexpr double kLn2 = 0.6931471805599453094172321214581766;

// Exponent gap beyond which the smaller addend is below rounding noise of the
// larger one: mantissa width (53) + 8 guard bits.
inline constexpr std::int64_t kAlignSaturation = 61;

namespace detail {

// Decompose v (finite, nonzero) as f * 2^e with 0.5 <= |f| < 1.
inline double frexp_mag(double v, int& e) { return std::frexp(v, &e); }

} // namespace detail

// ---------------------------------------------------------------------------
// XComplex
// ---------------------------------------------------------------------------

// Invariant: either canonical zero (0, 0, 0) or 0.5 <= hypot(re, im) < 1.
// Normalization rescales by powers of two only, so the phase is exact.
struct XComplex {
    double mant_re = 0.0;
    double mant_im = 0.0;
    std::int64_t exp2 = 0;

    bool is_zero() const noexcept { return mant_re == 0.0 && mant_im == 0.0; }
};

inline XComplex normalize(XComplex x) {
    if (x.mant_re == 0.0 && x.mant_im == 0.0) return XComplex{};
    // First coarse step keeps hypot() away from double over/underflow.
    double amax = std::max(std::fabs(x.mant_re), std::fabs(x.mant_im));
    int e0 = 0;
    detail::frexp_mag(amax, e0);
    x.mant_re = std::ldexp(x.mant_re, -e0);
    x.mant_im = std::ldexp(x.mant_im, -e0);
    x.exp2 += e0;
    // Now max component is in [0.5, 1), hypot in [0.5, sqrt(2)).
    double h = std::hypot(x.mant_re, x.mant_im);
    int e1 = 0;
    detail::frexp_mag(h, e1);
    if (e1 != 0) {
        x.mant_re = std::ldexp(x.mant_re, -e1);
        x.mant_im = std::ldexp(x.mant_im, -e1);
        x.exp2 += e1;
    }
    // ldexp is exact, but hypot of the scaled parts can round to 1.0.
    if (std::hypot(x.mant_re, x.mant_im) >= 1.0) {
        x.mant_re = std::ldexp(x.mant_re, -1);
        x.mant_im = std::ldexp(x.mant_im, -1);
        x.exp2 += 1;
    }
    return x;
}

inline XComplex xc_from_parts(double re, double im) {
    XComplex x;
    x.mant_re = re;
    x.mant_im = im;
    x.exp2 = 0;
    return normalize(x);
}

inline XComplex xc_from_complex(std::complex<double> z) {
    return xc_from_parts(z.real(), z.imag());
}

inline XComplex xc_from_double(double v) { return xc_from_parts(v, 0.0); }

// Build exp(ln_mag) * e^{i arg} without ever forming exp(ln_mag) as a double.
// ln_mag = -inf yields canonical zero.
inline XComplex xc_from_polar_log(double ln_mag, double arg) {
    if (ln_mag == -std::numeric_limits<double>::infinity()) return XComplex{};
    const double t = ln_mag / kLn2;
    double e = std::ceil(t);
    double frac = t - e; // in [-1, 0)
    double m = std::exp2(frac);
    XComplex x;
    x.mant_re = m * std::cos(arg);
    x.mant_im = m * std::sin(arg);
    x.exp2 = static_cast<std::int64_t>(e);
    return normalize(x);
}

// Signed real exp(ln_mag): exactly real, no phase rounding.
inline XComplex xc_real_from_log(double ln_mag, int sign) {
    XComplex x = xc_from_polar_log(ln_mag, 0.0);
    if (sign < 0) x.mant_re = -x.mant_re;
    return x;
}

inline XComplex xc_neg(XComplex a) {
    a.mant_re = -a.mant_re;
    a.mant_im = -a.mant_im;
    return a;
}

inline XComplex xc_add(const XComplex& a, const XComplex& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const XComplex* hi = &a;
    const XComplex* lo = &b;
    if (hi->exp2 < lo->exp2) std::swap(hi, lo);
    const std::int64_t gap = hi->exp2 - lo->exp2;
    if (gap > kAlignSaturation) return *hi;
    XComplex r;
    r.exp2 = hi->exp2;
    const int shift = -static_cast<int>(gap);
    r.mant_re = hi->mant_re + std::ldexp(lo->mant_re, shift);
    r.mant_im = hi->mant_im + std::ldexp(lo->mant_im, shift);
    return normalize(r);
}

inline XComplex xc_sub(const XComplex& a, const XComplex& b) {
    return xc_add(a, xc_neg(b));
}

inline XComplex xc_mul(const XComplex& a, const XComplex& b) {
    if (a.is_zero() || b.is_zero()) return XComplex{};
    XComplex r;
    r.mant_re = a.mant_re * b.mant_re - a.mant_im * b.mant_im;
    r.mant_im = a.mant_re * b.mant_im + a.mant_im * b.mant_re;
    r.exp2 = a.exp2 + b.exp2;
    return normalize(r);
}

// Scale by an ordinary double (phase-exact when s is a power of two).
inline XComplex xc_scale(const XComplex& a, double s) {
    if (a.is_zero() || s == 0.0) return XComplex{};
    XComplex r = a;
    r.mant_re *= s;
    r.mant_im *= s;
    return normalize(r);
}

// ln |value|, -inf for canonical zero.
inline double xc_log_abs(const XComplex& a) {
    if (a.is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log(std::hypot(a.mant_re, a.mant_im)) +
           static_cast<double>(a.exp2) * kLn2;
}

inline double xc_arg(const XComplex& a) {
    return std::atan2(a.mant_im, a.mant_re);
}

// |value|^{1/p} as an ordinary double.  Caller contract: |log_abs/p| < 700,
// otherwise the result leaves the double range and the caller must stay in
// log space.
inline double xc_root_abs(const XComplex& a, double p) {
    if (!(p > 0.0)) throw DomainError("xc_root_abs: p must be positive");
    if (a.is_zero()) return 0.0;
    const double q = xc_log_abs(a) / p;
    if (!(std::fabs(q) < 700.0))
        throw OverflowDomain("xc_root_abs: |log_abs / p| >= 700, keep working in log space");
    return std::exp(q);
}

// Collapse to a double; overflows to +/-inf, underflows to 0.
inline std::complex<double> xc_to_complex(const XComplex& a) {
    if (a.is_zero()) return {0.0, 0.0};
    const int e = static_cast<int>(std::clamp<std::int64_t>(a.exp2, -4000, 4000));
    return {std::ldexp(a.mant_re, e), std::ldexp(a.mant_im, e)};
}

// Normalized representations are canonical, so field equality is value
// equality (zeros are canonicalized too).
inline bool xc_value_eq(const XComplex& a, const XComplex& b) {
    return a.mant_re == b.mant_re && a.mant_im == b.mant_im && a.exp2 == b.exp2;
}

// Debug serialization "m_re,m_im,e"; not a stability surface.
inline std::string xc_to_string(const XComplex& a) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%lld", a.mant_re, a.mant_im,
                  static_cast<long long>(a.exp2));
    return buf;
}

// ---------------------------------------------------------------------------
// XReal: nonnegative magnitude in the same mantissa/exp2 scheme.
// mant = +inf encodes the "not certified" sentinel used by tail bounds.
// ---------------------------------------------------------------------------

struct XReal {
    double mant = 0.0; // 0, +inf, or in [0.5, 1)
    std::int64_t exp2 = 0;

    bool is_zero() const noexcept { return mant == 0.0; }
    bool is_inf() const noexcept { return std::isinf(mant); }

    static XReal zero() { return XReal{}; }
    static XReal infinity() {
        XReal r;
        r.mant = std::numeric_limits<double>::infinity();
        return r;
    }
};

inline XReal xr_normalize(XReal x) {
    if (x.mant == 0.0) return XReal{};
    if (std::isinf(x.mant)) return XReal::infinity();
    int e = 0;
    x.mant = detail::frexp_mag(x.mant, e);
    x.exp2 += e;
    return x;
}

inline XReal xr_from_double(double v) {
    if (v < 0.0) throw DomainError("XReal magnitude must be nonnegative");
    XReal r;
    r.mant = v;
    return xr_normalize(r);
}

inline XReal xr_from_ln(double ln_v) {
    if (ln_v == -std::numeric_limits<double>::infinity()) return XReal{};
    if (ln_v == std::numeric_limits<double>::infinity()) return XReal::infinity();
    const double t = ln_v / kLn2;
    double e = std::ceil(t);
    XReal r;
    r.mant = std::exp2(t - e);
    r.exp2 = static_cast<std::int64_t>(e);
    if (r.mant >= 1.0) { // exp2 rounding edge
        r.mant *= 0.5;
        r.exp2 += 1;
    }
    return r;
}

inline XReal xr_abs(const XComplex& a) {
    if (a.is_zero()) return XReal{};
    XReal r;
    r.mant = std::hypot(a.mant_re, a.mant_im);
    r.exp2 = a.exp2;
    return xr_normalize(r);
}

inline double xr_ln(const XReal& a) {
    if (a.is_zero()) return -std::numeric_limits<double>::infinity();
    if (a.is_inf()) return std::numeric_limits<double>::infinity();
    return std::log(a.mant) + static_cast<double>(a.exp2) * kLn2;
}

inline XReal xr_add(const XReal& a, const XReal& b) {
    if (a.is_inf() || b.is_inf()) return XReal::infinity();
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const XReal* hi = &a;
    const XReal* lo = &b;
    if (hi->exp2 < lo->exp2) std::swap(hi, lo);
    const std::int64_t gap = hi->exp2 - lo->exp2;
    if (gap > kAlignSaturation) return *hi;
    XReal r;
    r.exp2 = hi->exp2;
    r.mant = hi->mant + std::ldexp(lo->mant, -static_cast<int>(gap));
    return xr_normalize(r);
}

inline XReal xr_scale(const XReal& a, double s) {
    if (s < 0.0) throw DomainError("XReal scale factor must be nonnegative");
    if (a.is_inf()) return s == 0.0 ? XReal{} : XReal::infinity();
    XReal r = a;
    r.mant *= s;
    return xr_normalize(r);
}

inline bool xr_less(const XReal& a, const XReal& b) {
    if (a.is_inf()) return false;
    if (b.is_inf()) return true;
    if (a.is_zero()) return !b.is_zero();
    if (b.is_zero()) return false;
    if (a.exp2 != b.exp2) return a.exp2 < b.exp2;
    return a.mant < b.mant;
}

inline XReal xr_max(const XReal& a, const XReal& b) { return xr_less(a, b) ? b : a; }

inline double xr_to_double(const XReal& a) {
    if (a.is_zero()) return 0.0;
    if (a.is_inf()) return std::numeric_limits<double>::infinity();
    const int e = static_cast<int>(std::clamp<std::int64_t>(a.exp2, -4000, 4000));
    return std::ldexp(a.mant, e);
}

} // namespace efg
