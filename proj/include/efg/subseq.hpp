#pragma once

// Subsequence-restricted growth functionals at a point z: the order-style
// ratio along nu, the theta normalization along nu, the type along nu, the
// running scaled sup, and the exact max-partition identities against the
// complementary sequence.
//
// Exact zeros and certified-ambiguous derivative values are handled
// differently on purpose: a provable zero contributes a true 0 term, while
// an ambiguous value is excluded and counted (eps^{1/(n ln n)} -> 1 would
// otherwise poison the theta-style sups).

#include <cmath>
#include <complex>
#include <optional>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "efg/coeffs.hpp"
#include "efg/errors.hpp"
#include "efg/index_sequence.hpp"
#include "efg/recenter.hpp"

namespace efg {

struct KWindow {
    index_t k_lo = 1;
    index_t k_hi = 1; // inclusive
};

struct SubseqEstimate {
    double value = 0.0;
    KWindow k_window;
    std::complex<double> z;
    index_t skipped_ambiguous = 0;
    index_t skipped_nonpositive = 0; // rho only: -ln|a_n(z)| <= 0
    index_t zero_terms = 0;
    std::vector<std::tuple<index_t, index_t, double>> series; // (k, n_k, term)
};

// Memoizing ln|g^(n)(z)| evaluator shared across functionals at one point.
class DerivativeEvaluator {
public:
    DerivativeEvaluator(const CoefficientSource& src, std::complex<double> z,
                        RecenterPolicy policy = {})
        : src_(src), z_(z), policy_(policy) {}

    const LogAbsResult& at(index_t n) const {
        auto it = memo_.find(n);
        if (it != memo_.end()) return it->second;
        return memo_.emplace(n, derivative_log_abs(src_, z_, n, policy_)).first->second;
    }
    std::complex<double> z() const { return z_; }

private:
    const CoefficientSource& src_;
    std::complex<double> z_;
    RecenterPolicy policy_;
    mutable std::unordered_map<index_t, LogAbsResult> memo_;
};

namespace detail {

enum class Functional { rho, theta, tau, sigma };

// One term of the chosen functional at derivative index n, or nullopt when
// the index must be excluded (ambiguous, or nonpositive -ln|a_n(z)| for rho).
inline std::optional<double> functional_term(Functional f, const DerivativeEvaluator& ev,
                                             index_t n, double rho, SubseqEstimate* stats) {
    const LogAbsResult& la = ev.at(n);
    if (la.kind == LogAbsResult::Kind::ambiguous) {
        if (stats) ++stats->skipped_ambiguous;
        return std::nullopt;
    }
    const double nn = static_cast<double>(n);
    if (la.kind == LogAbsResult::Kind::exact_zero) {
        if (stats) ++stats->zero_terms;
        if (f == Functional::rho) {
            // ln 0 = -inf gives ratio 0; recorded as a 0 term but it carries
            // no information about the order, so it does not count as usable.
            return 0.0;
        }
        return 0.0;
    }
    switch (f) {
        case Functional::rho: {
            const double ln_coeff = la.value - ln_factorial(n);
            if (-ln_coeff <= 0.0) {
                if (stats) ++stats->skipped_nonpositive;
                return std::nullopt;
            }
            return nn * std::log(nn) / (-ln_coeff);
        }
        case Functional::theta:
            return std::exp(la.value / (nn * std::log(nn)));
        case Functional::tau: {
            const double ln_coeff = la.value - ln_factorial(n);
            return std::exp(std::log(nn) + (rho / nn) * ln_coeff - 1.0) / rho;
        }
        case Functional::sigma:
            return std::exp((1.0 - rho) * std::log(nn) + (rho / nn) * la.value);
    }
    return std::nullopt;
}

inline SubseqEstimate window_sup(Functional f, const DerivativeEvaluator& ev,
                                 const IndexSequence& nu, KWindow kw, double rho) {
    if (kw.k_lo < 1 || kw.k_hi < kw.k_lo) throw BadParam("bad k window");
    SubseqEstimate est;
    est.k_window = kw;
    est.z = ev.z();
    double sup = -kInf;
    index_t usable = 0;
    for (index_t k = kw.k_lo; k <= kw.k_hi; ++k) {
        const index_t n = nu.nth(k);
        if (n < 2) continue; // n ln n degenerate at n = 1
        const index_t zero_before = est.zero_terms;
        auto term = functional_term(f, ev, n, rho, &est);
        if (!term) continue;
        const bool is_zero_term = est.zero_terms > zero_before;
        // A provable zero is informative for theta/tau/sigma (the functional
        // really is 0 there) but says nothing about the order ratio.
        if (!is_zero_term || f != Functional::rho) ++usable;
        est.series.emplace_back(k, n, *term);
        sup = std::max(sup, *term);
    }
    if (usable == 0)
        throw AllSkipped("no usable terms in the k window");
    est.value = sup;
    return est;
}

} // namespace detail

// rho along nu: sup of n_k ln n_k / (-ln|a_{n_k}(z)|).
inline SubseqEstimate rho_nu(const CoefficientSource& src, const IndexSequence& nu,
                             std::complex<double> z, KWindow kw, RecenterPolicy policy = {}) {
    DerivativeEvaluator ev(src, z, policy);
    return detail::window_sup(detail::Functional::rho, ev, nu, kw, 0.0);
}

// theta along nu: sup of |g^(n_k)(z)|^{1/(n_k ln n_k)}.
inline SubseqEstimate theta_nu(const CoefficientSource& src, const IndexSequence& nu,
                               std::complex<double> z, KWindow kw, RecenterPolicy policy = {}) {
    DerivativeEvaluator ev(src, z, policy);
    return detail::window_sup(detail::Functional::theta, ev, nu, kw, 0.0);
}

// type along nu given rho: sup of (1/(e rho)) n_k |a_{n_k}(z)|^{rho/n_k}.
inline SubseqEstimate tau_nu(const CoefficientSource& src, const IndexSequence& nu,
                             std::complex<double> z, double rho, KWindow kw,
                             RecenterPolicy policy = {}) {
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw RhoOutOfRange("tau_nu requires 0 < rho < inf");
    DerivativeEvaluator ev(src, z, policy);
    return detail::window_sup(detail::Functional::tau, ev, nu, kw, rho);
}

// Running sup of the scaled terms n_k^{1-rho} |g^(n_k)(z)|^{rho/n_k} over
// k <= K, plus the index where the sup last improved.  Ambiguous terms are
// excluded (the curve just carries the previous sup).
struct SigmaCurve {
    std::vector<double> running_sup; // [k-1] = sup over k' <= k
    index_t last_improved_k = 0;
    index_t skipped_ambiguous = 0;
    index_t zero_terms = 0;
    std::complex<double> z;
};

inline SigmaCurve sigma_nu(const CoefficientSource& src, const IndexSequence& nu,
                           std::complex<double> z, double rho, index_t K,
                           RecenterPolicy policy = {}) {
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw RhoOutOfRange("sigma_nu requires 0 < rho < inf");
    if (K < 1) throw BadParam("sigma_nu requires K >= 1");
    DerivativeEvaluator ev(src, z, policy);
    SigmaCurve curve;
    curve.z = z;
    curve.running_sup.reserve(static_cast<std::size_t>(K));
    SubseqEstimate stats;
    double sup = 0.0;
    for (index_t k = 1; k <= K; ++k) {
        const index_t n = nu.nth(k);
        if (n >= 2) {
            auto term = detail::functional_term(detail::Functional::sigma, ev, n, rho, &stats);
            if (term && *term > sup) {
                sup = *term;
                curve.last_improved_k = k;
            }
        }
        curve.running_sup.push_back(sup);
    }
    curve.skipped_ambiguous = stats.skipped_ambiguous;
    curve.zero_terms = stats.zero_terms;
    return curve;
}

// ---------------------------------------------------------------------------
// Exact partition identities over a finite horizon: the full-sequence sup
// equals max(nu part, mu part) bit-exactly because every index term is the
// same deterministic computation on all three routes.
// ---------------------------------------------------------------------------
struct MaxIdentityReport {
    bool rho_ok = false;
    bool tau_ok = false;
    std::optional<double> rho_full, rho_nu_part, rho_mu_part;
    std::optional<double> tau_full, tau_nu_part, tau_mu_part;
};

namespace detail {

inline std::optional<double> try_sup(Functional f, const DerivativeEvaluator& ev,
                                     const IndexSequence& seq, index_t horizon, double rho) {
    auto [lo, hi] = seq.k_window_for(2, horizon);
    if (lo > hi) return std::nullopt;
    try {
        return window_sup(f, ev, seq, KWindow{lo, hi}, rho).value;
    } catch (const AllSkipped&) {
        return std::nullopt;
    }
}

inline bool partition_matches(const std::optional<double>& full,
                              const std::optional<double>& a,
                              const std::optional<double>& b) {
    std::optional<double> m;
    if (a) m = *a;
    if (b) m = m ? std::max(*m, *b) : *b;
    if (!full || !m) return full.has_value() == m.has_value();
    return *full == *m; // bit-exact by construction
}

} // namespace detail

inline MaxIdentityReport max_identity_check(const CoefficientSource& src, const IndexSequence& nu,
                                            std::complex<double> z, double rho, index_t horizon,
                                            RecenterPolicy policy = {}) {
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw RhoOutOfRange("max_identity_check requires 0 < rho < inf");
    const IndexSequence mu = complement(nu, horizon);
    const IndexSequence all = IndexSequence::naturals();
    DerivativeEvaluator ev(src, z, policy);
    MaxIdentityReport rep;
    rep.rho_full = detail::try_sup(detail::Functional::rho, ev, all, horizon, 0.0);
    rep.rho_nu_part = detail::try_sup(detail::Functional::rho, ev, nu, horizon, 0.0);
    rep.rho_mu_part = detail::try_sup(detail::Functional::rho, ev, mu, horizon, 0.0);
    rep.tau_full = detail::try_sup(detail::Functional::tau, ev, all, horizon, rho);
    rep.tau_nu_part = detail::try_sup(detail::Functional::tau, ev, nu, horizon, rho);
    rep.tau_mu_part = detail::try_sup(detail::Functional::tau, ev, mu, horizon, rho);
    rep.rho_ok = detail::partition_matches(rep.rho_full, rep.rho_nu_part, rep.rho_mu_part);
    rep.tau_ok = detail::partition_matches(rep.tau_full, rep.tau_nu_part, rep.tau_mu_part);
    return rep;
}

// Default k-window convention: k such that n_k lies in [N/2, N], mirroring
// the coefficient-window default so biases are comparable across nu and the
// full sequence.
inline KWindow default_k_window(const IndexSequence& nu, index_t horizon) {
    auto [lo, hi] = nu.k_window_for(std::max<index_t>(2, horizon / 2), horizon);
    if (lo > hi) throw EmptyWindow("sequence has no indices in [horizon/2, horizon]");
    return KWindow{lo, hi};
}

} // namespace efg
