#pragma once

// Entire functions presented as coefficient sources: n -> a_n with exact
// log-magnitudes (log-gamma closed forms where available), optional exact
// derivative evaluators, and optional ground-truth (order, type).

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "efg/errors.hpp"
#include "efg/index_sequence.hpp"
#include "efg/xarith.hpp"

namespace efg {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ln(n!) with a dense table over the desk-scale index range.  The table is
// built from std::lgamma, so cached and uncached calls are bit-identical.
inline double ln_factorial(index_t n) {
    constexpr index_t kTableSize = 1 << 16;
    static const std::vector<double>& table = *[] {
        auto* t = new std::vector<double>(kTableSize);
        for (index_t i = 0; i < kTableSize; ++i)
            (*t)[static_cast<std::size_t>(i)] = std::lgamma(static_cast<double>(i) + 1.0);
        return t;
    }();
    if (n >= 0 && n < kTableSize) return table[static_cast<std::size_t>(n)];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

struct GroundTruth {
    enum class TypeTag { undefined, minimal, finite, maximal };
    double order = 0.0;                     // in [0, +inf]
    TypeTag type_tag = TypeTag::undefined;  // defined only when 0 < order < inf
    double type_value = 0.0;                // meaningful for finite (0 for minimal, inf for maximal)

    static GroundTruth of(double order, double type) {
        GroundTruth g;
        g.order = order;
        if (order > 0.0 && std::isfinite(order)) {
            g.type_tag = TypeTag::finite;
            g.type_value = type;
        }
        return g;
    }
    static GroundTruth minimal(double order) {
        GroundTruth g;
        g.order = order;
        g.type_tag = TypeTag::minimal;
        g.type_value = 0.0;
        return g;
    }
    static GroundTruth maximal(double order) {
        GroundTruth g;
        g.order = order;
        g.type_tag = TypeTag::maximal;
        g.type_value = kInf;
        return g;
    }
    static GroundTruth order_only(double order) {
        GroundTruth g;
        g.order = order;
        return g;
    }
    bool type_defined() const { return type_tag != TypeTag::undefined; }
};

// Immutable after construction; all callables must be reentrant.
struct CoefficientSource {
    std::string id;
    std::function<XComplex(index_t)> coeff;                 // a_n
    std::function<double(index_t)> log_abs;                 // ln|a_n|, -inf at zeros
    std::function<XComplex(std::complex<double>, index_t)> derivative_exact; // g^(n)(z), empty if none
    std::optional<GroundTruth> ground_truth;

    bool has_derivative_exact() const { return static_cast<bool>(derivative_exact); }
};

namespace detail {

// Near-integer test used by the exact trig-derivative oracles.  Tolerant so
// that decimal renderings of pi-multiples (e.g. 3.14159265358979) are still
// recognized; generic points are unaffected at this tolerance.
inline bool near_integer(std::complex<double> q) {
    const double s = std::max(1.0, std::abs(q));
    if (std::fabs(q.imag()) > 1e-9 * s) return false;
    return std::fabs(q.real() - std::nearbyint(q.real())) <= 1e-9 * s;
}

// sin(w) with a structural zero at w in pi*Z.
inline XComplex trig_sin(std::complex<double> w) {
    const double pi = 3.14159265358979323846264338327950288;
    if (near_integer(w / pi)) return XComplex{};
    return xc_from_complex(std::sin(w));
}

// cos(w) with a structural zero at w in pi/2 + pi*Z.
inline XComplex trig_cos(std::complex<double> w) {
    const double pi = 3.14159265358979323846264338327950288;
    if (near_integer(w / pi - 0.5)) return XComplex{};
    return xc_from_complex(std::cos(w));
}

// lambda^n as an XComplex (lambda real nonzero), exponent folded in log space.
inline XComplex real_power(double lambda, index_t n) {
    const double ln_mag = static_cast<double>(n) * std::log(std::fabs(lambda));
    const bool neg = lambda < 0.0 && (n % 2 != 0);
    return xc_real_from_log(ln_mag, neg ? -1 : 1);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

inline CoefficientSource make_exp() {
    CoefficientSource s;
    s.id = "exp";
    s.log_abs = [](index_t n) { return -ln_factorial(n); };
    s.coeff = [la = s.log_abs](index_t n) { return xc_from_polar_log(la(n), 0.0); };
    s.derivative_exact = [](std::complex<double> z, index_t) {
        return xc_mul(xc_from_polar_log(z.real(), 0.0), xc_from_complex(std::polar(1.0, z.imag())));
    };
    s.ground_truth = GroundTruth::of(1.0, 1.0);
    return s;
}

inline CoefficientSource make_sin(double lambda) {
    if (lambda == 0.0) throw BadParam("sin: lambda must be nonzero");
    CoefficientSource s;
    s.id = "sin:lambda=" + std::to_string(lambda);
    const double ln_l = std::log(std::fabs(lambda));
    s.log_abs = [ln_l](index_t n) {
        if (n % 2 == 0) return -kInf;
        return static_cast<double>(n) * ln_l - ln_factorial(n);
    };
    s.coeff = [lambda, la = s.log_abs](index_t n) {
        if (n % 2 == 0) return XComplex{};
        const index_t k = (n - 1) / 2;
        int sgn = (k % 2 == 0) ? 1 : -1;
        if (lambda < 0.0) sgn = -sgn; // lambda^n, n odd
        return xc_real_from_log(la(n), sgn);
    };
    // g^(n)(z) = lambda^n * [n even: (-1)^{n/2} sin(lambda z); n odd: (-1)^{(n-1)/2} cos(lambda z)]
    s.derivative_exact = [lambda](std::complex<double> z, index_t n) {
        const std::complex<double> w = lambda * z;
        XComplex trig = (n % 2 == 0) ? detail::trig_sin(w) : detail::trig_cos(w);
        if (trig.is_zero()) return XComplex{};
        const index_t k = n / 2;
        int sgn = (k % 2 == 0) ? 1 : -1;
        XComplex amp = detail::real_power(lambda, n);
        if (sgn < 0) amp = xc_neg(amp);
        return xc_mul(amp, trig);
    };
    s.ground_truth = GroundTruth::of(1.0, std::fabs(lambda));
    return s;
}

inline CoefficientSource make_cos(double lambda) {
    if (lambda == 0.0) throw BadParam("cos: lambda must be nonzero");
    CoefficientSource s;
    s.id = "cos:lambda=" + std::to_string(lambda);
    const double ln_l = std::log(std::fabs(lambda));
    s.log_abs = [ln_l](index_t n) {
        if (n % 2 != 0) return -kInf;
        return static_cast<double>(n) * ln_l - ln_factorial(n);
    };
    s.coeff = [la = s.log_abs](index_t n) {
        if (n % 2 != 0) return XComplex{};
        const int sgn = ((n / 2) % 2 == 0) ? 1 : -1;
        return xc_real_from_log(la(n), sgn);
    };
    // g^(n)(z) = lambda^n * [n even: (-1)^{n/2} cos; n odd: (-1)^{(n+1)/2} sin]
    s.derivative_exact = [lambda](std::complex<double> z, index_t n) {
        const std::complex<double> w = lambda * z;
        XComplex trig = (n % 2 == 0) ? detail::trig_cos(w) : detail::trig_sin(w);
        if (trig.is_zero()) return XComplex{};
        const index_t k = (n + 1) / 2;
        int sgn = (k % 2 == 0) ? 1 : -1;
        if (n % 2 == 0) sgn = ((n / 2) % 2 == 0) ? 1 : -1;
        XComplex amp = detail::real_power(lambda, n);
        if (sgn < 0) amp = xc_neg(amp);
        return xc_mul(amp, trig);
    };
    s.ground_truth = GroundTruth::of(1.0, std::fabs(lambda));
    return s;
}

// exp(z^k): a_n = 1/(n/k)! when k | n, else 0.
inline CoefficientSource make_exp_zk(index_t k) {
    if (k < 1) throw BadParam("exp_zk: k must be >= 1");
    CoefficientSource s;
    s.id = "exp_zk:k=" + std::to_string(k);
    s.log_abs = [k](index_t n) {
        if (n % k != 0) return -kInf;
        return -ln_factorial(n / k);
    };
    s.coeff = [la = s.log_abs, k](index_t n) {
        if (n % k != 0) return XComplex{};
        return xc_from_polar_log(la(n), 0.0);
    };
    s.ground_truth = GroundTruth::of(static_cast<double>(k), 1.0);
    return s;
}

// Mittag-Leffler E_alpha: a_n = 1/Gamma(alpha n + 1), alpha > 0.
inline CoefficientSource make_mittag_leffler(double alpha) {
    if (!(alpha > 0.0)) throw BadParam("mittag_leffler: alpha must be positive");
    CoefficientSource s;
    std::ostringstream os;
    os << "mittag_leffler:alpha=" << alpha;
    s.id = os.str();
    s.log_abs = [alpha](index_t n) {
        return -std::lgamma(alpha * static_cast<double>(n) + 1.0);
    };
    s.coeff = [la = s.log_abs](index_t n) { return xc_from_polar_log(la(n), 0.0); };
    s.ground_truth = GroundTruth::of(1.0 / alpha, 1.0);
    return s;
}

// Designer source of order rho and type exactly 1/(e rho):
// ln|a_n| = -(n/rho) ln n for n >= 1, a_0 = 1.
inline CoefficientSource make_power_type(double rho) {
    if (!(rho > 0.0)) throw BadParam("power_type: rho must be positive");
    CoefficientSource s;
    std::ostringstream os;
    os << "power_type:rho=" << rho;
    s.id = os.str();
    s.log_abs = [rho](index_t n) {
        if (n == 0) return 0.0;
        const double nn = static_cast<double>(n);
        return -(nn / rho) * std::log(nn);
    };
    s.coeff = [la = s.log_abs](index_t n) { return xc_from_polar_log(la(n), 0.0); };
    s.ground_truth = GroundTruth::of(rho, 1.0 / (std::exp(1.0) * rho));
    return s;
}

// Designer source of order rho and minimal type:
// ln|a_n| = -(n/rho) ln(n ln n) for n >= 2; a_0 = 1, a_1 = 0 padding
// (ln ln n undefined earlier; the padding does not affect any limsup).
inline CoefficientSource make_minimal_type(double rho) {
    if (!(rho > 0.0)) throw BadParam("minimal_type: rho must be positive");
    CoefficientSource s;
    std::ostringstream os;
    os << "minimal_type:rho=" << rho;
    s.id = os.str();
    s.log_abs = [rho](index_t n) {
        if (n == 0) return 0.0;
        if (n == 1) return -kInf;
        const double nn = static_cast<double>(n);
        return -(nn / rho) * std::log(nn * std::log(nn));
    };
    s.coeff = [la = s.log_abs](index_t n) { return xc_from_polar_log(la(n), 0.0); };
    s.ground_truth = GroundTruth::minimal(rho);
    return s;
}

// Designer source of order rho and maximal type:
// ln|a_n| = -(n/rho) ln(n / ln n) for n >= 3; a_0 = 1, a_1 = a_2 = 0 padding.
inline CoefficientSource make_maximal_type(double rho) {
    if (!(rho > 0.0)) throw BadParam("maximal_type: rho must be positive");
    CoefficientSource s;
    std::ostringstream os;
    os << "maximal_type:rho=" << rho;
    s.id = os.str();
    s.log_abs = [rho](index_t n) {
        if (n == 0) return 0.0;
        if (n < 3) return -kInf;
        const double nn = static_cast<double>(n);
        return -(nn / rho) * std::log(nn / std::log(nn));
    };
    s.coeff = [la = s.log_abs](index_t n) { return xc_from_polar_log(la(n), 0.0); };
    s.ground_truth = GroundTruth::maximal(rho);
    return s;
}

inline CoefficientSource make_polynomial(std::vector<double> cs) {
    CoefficientSource s;
    std::ostringstream os;
    os << "polynomial:coeffs=";
    for (std::size_t i = 0; i < cs.size(); ++i) os << (i ? "," : "") << cs[i];
    s.id = os.str();
    auto coeffs = std::make_shared<std::vector<double>>(std::move(cs));
    s.coeff = [coeffs](index_t n) {
        if (n < 0 || static_cast<std::size_t>(n) >= coeffs->size()) return XComplex{};
        return xc_from_double((*coeffs)[static_cast<std::size_t>(n)]);
    };
    s.log_abs = [c = s.coeff](index_t n) { return xc_log_abs(c(n)); };
    s.ground_truth = GroundTruth::order_only(0.0);
    return s;
}

// g(z) = sin z + cos 2z: the attainment-asymmetry example (order 1, type 2,
// with the type limsup carried entirely by the even indices).
inline CoefficientSource make_sin_plus_cos2() {
    CoefficientSource s;
    s.id = "sin_plus_cos2";
    s.log_abs = [](index_t n) {
        const double nn = static_cast<double>(n);
        const double lg = ln_factorial(n);
        return (n % 2 == 0) ? nn * kLn2 - lg : -lg;
    };
    s.coeff = [la = s.log_abs](index_t n) {
        // odd n=2k+1: (-1)^k / n!;  even n=2k: (-1)^k 2^n / n!
        const index_t k = (n % 2 == 0) ? n / 2 : (n - 1) / 2;
        const int sgn = (k % 2 == 0) ? 1 : -1;
        return xc_real_from_log(la(n), sgn);
    };
    // g^(n)(z) = sin(z + n pi/2) + 2^n cos(2z + n pi/2), expanded by parity.
    s.derivative_exact = [](std::complex<double> z, index_t n) {
        XComplex part_sin, part_cos;
        const index_t k = n / 2;
        if (n % 2 == 0) {
            const int s1 = (k % 2 == 0) ? 1 : -1;
            XComplex t = detail::trig_sin(z);
            if (!t.is_zero() && s1 < 0) t = xc_neg(t);
            part_sin = t;
            XComplex c = detail::trig_cos(2.0 * z);
            if (!c.is_zero()) {
                XComplex amp = detail::real_power(2.0, n);
                if (s1 < 0) amp = xc_neg(amp);
                part_cos = xc_mul(amp, c);
            }
        } else {
            const int s1 = (k % 2 == 0) ? 1 : -1;
            XComplex t = detail::trig_cos(z);
            if (!t.is_zero() && s1 < 0) t = xc_neg(t);
            part_sin = t;
            XComplex c = detail::trig_sin(2.0 * z);
            if (!c.is_zero()) {
                XComplex amp = detail::real_power(2.0, n);
                if (s1 > 0) amp = xc_neg(amp); // -(-1)^k 2^n sin(2z)
                part_cos = xc_mul(amp, c);
            }
        }
        return xc_add(part_sin, part_cos);
    };
    s.ground_truth = GroundTruth::of(1.0, 2.0);
    return s;
}

// ---------------------------------------------------------------------------
// Combinators
// ---------------------------------------------------------------------------

// Coefficientwise sum; log_abs recomputed from the summed values, exact
// derivative kept only when both operands carry one.  Ground truth is never
// inferred; use with_ground_truth() when the caller knows it.
inline CoefficientSource source_sum(const CoefficientSource& a, const CoefficientSource& b) {
    CoefficientSource s;
    s.id = "(" + a.id + ")+(" + b.id + ")";
    s.coeff = [ca = a.coeff, cb = b.coeff](index_t n) { return xc_add(ca(n), cb(n)); };
    s.log_abs = [c = s.coeff](index_t n) { return xc_log_abs(c(n)); };
    if (a.has_derivative_exact() && b.has_derivative_exact()) {
        s.derivative_exact = [da = a.derivative_exact, db = b.derivative_exact](
                                 std::complex<double> z, index_t n) {
            return xc_add(da(z, n), db(z, n));
        };
    }
    return s;
}

inline CoefficientSource with_ground_truth(CoefficientSource s, GroundTruth gt) {
    s.ground_truth = gt;
    return s;
}

// Keep only the coefficients whose index lies in `keep`; everything else
// becomes an exact zero.  Drops the exact derivative (no closed form).
inline CoefficientSource masked(const CoefficientSource& src, IndexSequence keep) {
    CoefficientSource s;
    s.id = src.id + "|masked(" + keep.describe() + ")";
    s.coeff = [c = src.coeff, keep](index_t n) {
        return keep.contains(n) ? c(n) : XComplex{};
    };
    s.log_abs = [la = src.log_abs, keep](index_t n) {
        return keep.contains(n) ? la(n) : -kInf;
    };
    return s;
}

// Source with coefficients |a_n| (the sharp operator at the series level).
// log_abs is forwarded unchanged, which is what makes estimator invariance
// under sharp bit-exact.
inline CoefficientSource sharp_source(const CoefficientSource& src) {
    CoefficientSource s;
    s.id = "sharp(" + src.id + ")";
    s.coeff = [c = src.coeff](index_t n) {
        XComplex v = c(n);
        if (v.is_zero()) return v;
        XComplex r;
        r.mant_re = std::hypot(v.mant_re, v.mant_im);
        r.mant_im = 0.0;
        r.exp2 = v.exp2;
        return normalize(r);
    };
    s.log_abs = src.log_abs;
    s.ground_truth = src.ground_truth;
    return s;
}

// Coefficient source of the m-th derivative: b_n = (n+m)!/n! * a_{n+m}.
inline CoefficientSource derivative_source(const CoefficientSource& src, index_t m) {
    if (m < 0) throw BadParam("derivative_source: m must be >= 0");
    CoefficientSource s;
    s.id = "d^" + std::to_string(m) + "(" + src.id + ")";
    s.log_abs = [la = src.log_abs, m](index_t n) {
        const double lnC = ln_factorial(n + m) - ln_factorial(n);
        const double base = la(n + m);
        return base == -kInf ? -kInf : lnC + base;
    };
    s.coeff = [c = src.coeff, m](index_t n) {
        XComplex v = c(n + m);
        if (v.is_zero()) return v;
        const double lnC = ln_factorial(n + m) - ln_factorial(n);
        return xc_mul(v, xc_from_polar_log(lnC, 0.0));
    };
    return s;
}

// ---------------------------------------------------------------------------
// Catalog string interface: "id" or "id:key=value[,key=value...]"
// ---------------------------------------------------------------------------

struct CatalogEntry {
    std::string id;
    std::string params;       // human-readable parameter doc
    std::string ground_truth; // human-readable ground truth
    bool has_exact_derivative;
};

inline std::vector<CatalogEntry> catalog_listing() {
    return {
        {"exp", "", "order 1, type 1", true},
        {"sin", "lambda (nonzero real)", "order 1, type |lambda|", true},
        {"cos", "lambda (nonzero real)", "order 1, type |lambda|", true},
        {"exp_zk", "k (integer >= 1)", "order k, type 1", false},
        {"mittag_leffler", "alpha (> 0)", "order 1/alpha, type 1", false},
        {"power_type", "rho (> 0)", "order rho, type 1/(e rho)", false},
        {"minimal_type", "rho (> 0)", "order rho, minimal type", false},
        {"maximal_type", "rho (> 0)", "order rho, maximal type", false},
        {"polynomial", "coeffs (comma list)", "order 0, type undefined", false},
        {"sin_plus_cos2", "", "order 1, type 2", true},
    };
}

namespace detail {

inline std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& s) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        std::string item = s.substr(pos, comma - pos);
        std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw BadParam("malformed parameter '" + item + "' (expected key=value)");
        out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
        pos = comma + 1;
    }
    return out;
}

inline double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw BadParam("parameter '" + key + "' is not a number: " + v);
    }
}

} // namespace detail

inline CoefficientSource catalog(const std::string& spec) {
    std::string name = spec;
    std::string params;
    if (auto colon = spec.find(':'); colon != std::string::npos) {
        name = spec.substr(0, colon);
        params = spec.substr(colon + 1);
    }
    auto need_one = [&](const std::string& key) -> double {
        for (auto& [k, v] : detail::parse_kv(params))
            if (k == key) return detail::parse_double(key, v);
        throw BadParam("source '" + name + "' requires parameter " + key);
    };
    if (name == "exp") return make_exp();
    if (name == "sin") return make_sin(need_one("lambda"));
    if (name == "cos") return make_cos(need_one("lambda"));
    if (name == "exp_zk") {
        double k = need_one("k");
        if (k < 1.0 || k != std::floor(k)) throw BadParam("exp_zk: k must be an integer >= 1");
        return make_exp_zk(static_cast<index_t>(k));
    }
    if (name == "mittag_leffler") return make_mittag_leffler(need_one("alpha"));
    if (name == "power_type") return make_power_type(need_one("rho"));
    if (name == "minimal_type") return make_minimal_type(need_one("rho"));
    if (name == "maximal_type") return make_maximal_type(need_one("rho"));
    if (name == "sin_plus_cos2") return make_sin_plus_cos2();
    if (name == "polynomial") {
        // "polynomial:coeffs=c0,c1,..." -- the whole remainder is the list.
        const std::string prefix = "coeffs=";
        if (params.rfind(prefix, 0) != 0)
            throw BadParam("polynomial requires parameter coeffs");
        std::string cs = params.substr(prefix.size());
        if (cs.empty()) throw BadParam("polynomial coeffs list is empty");
        std::vector<double> xs;
        std::size_t pos = 0;
        while (pos <= cs.size()) {
            std::size_t comma = cs.find_first_of(",;", pos);
            if (comma == std::string::npos) comma = cs.size();
            xs.push_back(detail::parse_double("coeffs", cs.substr(pos, comma - pos)));
            pos = comma + 1;
        }
        return make_polynomial(std::move(xs));
    }
    throw UnknownId("unknown source id: " + name);
}

// Index-sequence spec strings: even|odd|squares|primes|power:b=2|arith:q=,r=|list:1,5,9
// and complement:<spec>.
inline IndexSequence parse_index_sequence(const std::string& spec, index_t horizon = 4000) {
    if (spec == "even" || spec == "evens") return IndexSequence::evens();
    if (spec == "odd" || spec == "odds") return IndexSequence::odds();
    if (spec == "squares") return IndexSequence::squares();
    if (spec == "primes") return IndexSequence::primes();
    if (spec == "naturals" || spec == "all") return IndexSequence::naturals();
    if (spec.rfind("complement:", 0) == 0)
        return complement(parse_index_sequence(spec.substr(11), horizon), horizon);
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon == std::string::npos ? spec.size() : colon);
    std::string params = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (name == "power") {
        for (auto& [k, v] : detail::parse_kv(params))
            if (k == "b") return IndexSequence::power(static_cast<index_t>(detail::parse_double(k, v)));
        throw BadParam("power sequence requires b=");
    }
    if (name == "arith") {
        index_t q = -1, r = -1;
        for (auto& [k, v] : detail::parse_kv(params)) {
            if (k == "q") q = static_cast<index_t>(detail::parse_double(k, v));
            if (k == "r") r = static_cast<index_t>(detail::parse_double(k, v));
        }
        if (q < 0 || r < 0) throw BadParam("arith sequence requires q= and r=");
        return IndexSequence::arithmetic(q, r);
    }
    if (name == "list") {
        std::vector<index_t> xs;
        std::size_t pos = 0;
        while (pos <= params.size() && !params.empty()) {
            std::size_t comma = params.find(',', pos);
            if (comma == std::string::npos) comma = params.size();
            xs.push_back(static_cast<index_t>(detail::parse_double("list", params.substr(pos, comma - pos))));
            pos = comma + 1;
        }
        return IndexSequence::explicit_list(std::move(xs));
    }
    throw UnknownId("unknown index sequence spec: " + spec);
}

// Finite-prefix entirety diagnostic: ln|a_n|/n should trend to -inf along the
// nonzero coefficients.  Heuristic only.
struct EntiretyDiagnostic {
    bool ok = false;
    double early = 0.0; // ln|a_n|/n averaged over the first nonzero quartile
    double late = 0.0;  // same over the last quartile
};

inline EntiretyDiagnostic entirety_diagnostic(const CoefficientSource& src, index_t K) {
    std::vector<double> slopes;
    for (index_t n = 2; n <= K; ++n) {
        double la = src.log_abs(n);
        if (la == -kInf) continue;
        slopes.push_back(la / static_cast<double>(n));
    }
    EntiretyDiagnostic d;
    if (slopes.size() < 8) {
        d.ok = true; // too few nonzero coefficients to judge (polynomial-like)
        return d;
    }
    const std::size_t q = slopes.size() / 4;
    for (std::size_t i = 0; i < q; ++i) d.early += slopes[i];
    for (std::size_t i = slopes.size() - q; i < slopes.size(); ++i) d.late += slopes[i];
    d.early /= static_cast<double>(q);
    d.late /= static_cast<double>(q);
    d.ok = d.late < d.early && d.late < 0.0;
    return d;
}

} // namespace efg
