#pragma once

// Seeded empirical probes of the almost-everywhere and dense-G_delta
// statements: per-sample comparisons of subsequence functionals against the
// same-horizon full-sequence estimate (which cancels the common finite-window
// bias), divergence signatures for maximal-type sources, the sub-mean-value
// quadrature check, circle integrals, and the exceptional-set grid scan.
//
// All probes are deterministic: samples derive from (seed, index), per-sample
// work is independent, and reductions run in index order.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "efg/coeffs.hpp"
#include "efg/errors.hpp"
#include "efg/index_sequence.hpp"
#include "efg/parallel.hpp"
#include "efg/sampling.hpp"
#include "efg/subseq.hpp"

namespace efg {

struct SampleRecord {
    std::complex<double> z;
    double value_nu = 0.0;
    double value_full = 0.0;
    double gap = 0.0;
    bool exceptional = false;
    bool structurally_empty = false; // AllSkipped on one of the parts
    index_t skipped_ambiguous = 0;
};

struct AeReport {
    std::vector<SampleRecord> samples;
    index_t exceptional_count = 0;
    double exceptional_fraction = 0.0;
    index_t structurally_empty_count = 0;
    std::uint64_t seed = 0;
};

namespace detail {

// Window sup of a functional over nu and over the full sequence on the same
// n-horizon, sharing one derivative evaluator per sample.
struct PairSup {
    std::optional<double> nu_value;
    std::optional<double> full_value;
    index_t skipped = 0;
};

inline PairSup pair_sup(Functional f, const CoefficientSource& src, const IndexSequence& nu,
                        std::complex<double> z, KWindow kw, double rho,
                        const RecenterPolicy& policy) {
    DerivativeEvaluator ev(src, z, policy);
    PairSup out;
    try {
        SubseqEstimate e = window_sup(f, ev, nu, kw, rho);
        out.nu_value = e.value;
        out.skipped += e.skipped_ambiguous;
    } catch (const AllSkipped&) {
    }
    const index_t n_lo = nu.nth(kw.k_lo);
    const index_t n_hi = nu.nth(kw.k_hi);
    try {
        SubseqEstimate e = window_sup(f, ev, IndexSequence::naturals(),
                                      KWindow{std::max<index_t>(2, n_lo), n_hi}, rho);
        out.full_value = e.value;
        out.skipped += e.skipped_ambiguous;
    } catch (const AllSkipped&) {
    }
    return out;
}

inline void finalize(AeReport& rep) {
    for (const auto& s : rep.samples) {
        if (s.exceptional) ++rep.exceptional_count;
        if (s.structurally_empty) ++rep.structurally_empty_count;
    }
    rep.exceptional_fraction = rep.samples.empty()
                                   ? 0.0
                                   : static_cast<double>(rep.exceptional_count) /
                                         static_cast<double>(rep.samples.size());
}

} // namespace detail

// Theorem-1 probe: theta along nu vs the full-sequence theta at the same
// n-horizon; a sample is exceptional when the gap exceeds tol or when the nu
// part is 0 while the full part is not.
inline AeReport ae_order_experiment(const CoefficientSource& src, const IndexSequence& nu,
                                    const SamplingSpec& spec, KWindow kw, double tol,
                                    unsigned threads = 1, RecenterPolicy policy = {}) {
    const SubexponentialReport diag = subexponential_diagnostic(nu, std::max<index_t>(10, kw.k_hi));
    if (diag.flagged_non_subexponential)
        throw BadParam("index sequence flagged as non-subexponential; the a.e. statement does not apply");
    const auto zs = materialize_samples(spec);
    AeReport rep;
    rep.seed = spec.seed;
    rep.samples.resize(zs.size());
    parallel_for_index(zs.size(), threads, [&](std::size_t i) {
        SampleRecord& r = rep.samples[i];
        r.z = zs[i];
        const detail::PairSup p =
            detail::pair_sup(detail::Functional::theta, src, nu, zs[i], kw, 0.0, policy);
        r.skipped_ambiguous = p.skipped;
        if (!p.nu_value || !p.full_value) {
            r.structurally_empty = true;
            return;
        }
        r.value_nu = *p.nu_value;
        r.value_full = *p.full_value;
        r.gap = std::fabs(r.value_nu - r.value_full);
        r.exceptional = r.gap > tol || (r.value_nu == 0.0 && r.value_full > tol);
    });
    detail::finalize(rep);
    return rep;
}

// Theorem-2(i) probe: tau along nu vs full-sequence tau, relative gap.
inline AeReport ae_type_experiment(const CoefficientSource& src, const IndexSequence& nu,
                                   const SamplingSpec& spec, double rho, KWindow kw,
                                   double tol_rel, unsigned threads = 1,
                                   RecenterPolicy policy = {}) {
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw RhoOutOfRange("ae_type_experiment requires 0 < rho < inf");
    const auto zs = materialize_samples(spec);
    AeReport rep;
    rep.seed = spec.seed;
    rep.samples.resize(zs.size());
    parallel_for_index(zs.size(), threads, [&](std::size_t i) {
        SampleRecord& r = rep.samples[i];
        r.z = zs[i];
        const detail::PairSup p =
            detail::pair_sup(detail::Functional::tau, src, nu, zs[i], kw, rho, policy);
        r.skipped_ambiguous = p.skipped;
        if (!p.nu_value || !p.full_value) {
            r.structurally_empty = true;
            return;
        }
        r.value_nu = *p.nu_value;
        r.value_full = *p.full_value;
        const double denom = std::max(std::fabs(r.value_full), 1e-300);
        r.gap = std::fabs(r.value_nu - r.value_full) / denom;
        r.exceptional = r.gap > tol_rel;
    });
    detail::finalize(rep);
    return rep;
}

// ---------------------------------------------------------------------------
// Theorem-2(ii) probe: per disk, the sup over samples of the sigma running
// sup should keep growing across the K schedule for a maximal-type source.
// "Divergence" is operationalized as growth factor >= 2 from the first to
// the last K of the schedule.
// ---------------------------------------------------------------------------
struct GdeltaDiskResult {
    Disk disk;
    std::vector<double> sup_at_schedule; // sup over samples of running sup at each K
    double growth_factor = 0.0;
    bool success = false;
};

struct GdeltaReport {
    std::vector<GdeltaDiskResult> disks;
    std::vector<index_t> schedule;
    bool all_disks_success = false;
    std::uint64_t seed = 0;
    index_t samples_per_disk = 0;
};

inline GdeltaReport gdelta_probe(const CoefficientSource& src, const IndexSequence& nu,
                                 const std::vector<Disk>& disks, double rho,
                                 std::vector<index_t> schedule, std::uint64_t seed,
                                 index_t samples_per_disk = 25, unsigned threads = 1,
                                 RecenterPolicy policy = {}) {
    if (schedule.size() < 2)
        throw BadParam("gdelta_probe needs a K schedule of length >= 2 (growth is undefined otherwise)");
    for (std::size_t i = 1; i < schedule.size(); ++i)
        if (schedule[i] <= schedule[i - 1]) throw BadParam("K schedule must be increasing");
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw RhoOutOfRange("gdelta_probe requires 0 < rho < inf");
    GdeltaReport rep;
    rep.schedule = schedule;
    rep.seed = seed;
    rep.samples_per_disk = samples_per_disk;
    rep.disks.resize(disks.size());
    const index_t k_max = schedule.back();
    for (std::size_t di = 0; di < disks.size(); ++di) {
        GdeltaDiskResult& dr = rep.disks[di];
        dr.disk = disks[di];
        const std::uint64_t disk_seed = detail::splitmix64(seed ^ (0xd15cULL + di));
        std::vector<std::vector<double>> per_sample(static_cast<std::size_t>(samples_per_disk));
        parallel_for_index(static_cast<std::size_t>(samples_per_disk), threads, [&](std::size_t si) {
            const std::complex<double> z = uniform_in_disk(disks[di], disk_seed, si);
            const SigmaCurve curve = sigma_nu(src, nu, z, rho, k_max, policy);
            std::vector<double> vals;
            vals.reserve(schedule.size());
            for (index_t K : schedule)
                vals.push_back(curve.running_sup[static_cast<std::size_t>(K - 1)]);
            per_sample[si] = std::move(vals);
        });
        dr.sup_at_schedule.assign(schedule.size(), 0.0);
        for (const auto& vals : per_sample)
            for (std::size_t t = 0; t < vals.size(); ++t)
                dr.sup_at_schedule[t] = std::max(dr.sup_at_schedule[t], vals[t]);
        const double first = dr.sup_at_schedule.front();
        const double last = dr.sup_at_schedule.back();
        dr.growth_factor = first > 0.0 ? last / first
                                       : (last > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
        dr.success = dr.growth_factor >= 2.0;
    }
    rep.all_disks_success = !rep.disks.empty();
    for (const auto& d : rep.disks) rep.all_disks_success = rep.all_disks_success && d.success;
    return rep;
}

// ---------------------------------------------------------------------------
// Sub-mean-value check for the truncated sup function
//   Phi(z) = max_{k in [k_lo, k_hi]} |g^(n_k)(z)|^{1/(n_k ln n_k)}.
// Phi is a finite max of subharmonic functions, so the center value must not
// exceed the disk average; the quadrature is a ring-and-spoke product rule
// with ring weights proportional to the ring radius.
// ---------------------------------------------------------------------------
struct PhiSpec {
    const CoefficientSource& src;
    IndexSequence nu;
    index_t k_lo;
    index_t k_hi;
};

struct QuadratureSpec {
    index_t rings = 16;  // R >= 16
    index_t spokes = 32; // S >= 32
};

struct MeanValueReport {
    double center_value = 0.0;
    double average = 0.0;
    double slack = 0.0;
    double node_max = 0.0;
    double node_min = 0.0;
    bool holds = false;
    bool center_ambiguous = false;
    double excluded_fraction = 0.0;
    bool coverage_warning = false; // > 5% of nodes ambiguous
};

namespace detail {

// Phi at one point; nullopt when every window term is ambiguous.
inline std::optional<double> phi_value(const PhiSpec& phi, std::complex<double> z,
                                       const RecenterPolicy& policy) {
    DerivativeEvaluator ev(phi.src, z, policy);
    try {
        return window_sup(Functional::theta, ev, phi.nu, KWindow{phi.k_lo, phi.k_hi}, 0.0).value;
    } catch (const AllSkipped&) {
        return std::nullopt;
    }
}

} // namespace detail

inline MeanValueReport mean_value_check(const PhiSpec& phi, const Disk& disk,
                                        const QuadratureSpec& quad, unsigned threads = 1,
                                        RecenterPolicy policy = {}) {
    if (quad.rings < 16 || quad.spokes < 32)
        throw BadParam("mean_value_check requires rings >= 16 and spokes >= 32");
    MeanValueReport rep;
    const auto center = detail::phi_value(phi, {disk.cx, disk.cy}, policy);
    if (!center) {
        rep.center_ambiguous = true;
        return rep;
    }
    rep.center_value = *center;
    const std::size_t node_count = static_cast<std::size_t>(quad.rings * quad.spokes);
    std::vector<std::optional<double>> values(node_count);
    const double two_pi = 6.28318530717958647692528676655900577;
    parallel_for_index(node_count, threads, [&](std::size_t idx) {
        const index_t i = static_cast<index_t>(idx) / quad.spokes; // ring
        const index_t j = static_cast<index_t>(idx) % quad.spokes; // spoke
        const double r = disk.radius * (static_cast<double>(i) + 0.5) / static_cast<double>(quad.rings);
        const double a = two_pi * static_cast<double>(j) / static_cast<double>(quad.spokes);
        values[idx] = detail::phi_value(
            phi, {disk.cx + r * std::cos(a), disk.cy + r * std::sin(a)}, policy);
    });
    double wsum = 0.0, wval = 0.0;
    double vmax = -kInf, vmin = kInf;
    std::size_t excluded = 0;
    for (std::size_t idx = 0; idx < node_count; ++idx) {
        const index_t i = static_cast<index_t>(idx) / quad.spokes;
        const double w = static_cast<double>(i) + 0.5; // proportional to ring radius
        if (!values[idx]) {
            ++excluded;
            continue;
        }
        wsum += w;
        wval += w * (*values[idx]);
        vmax = std::max(vmax, *values[idx]);
        vmin = std::min(vmin, *values[idx]);
    }
    rep.excluded_fraction = static_cast<double>(excluded) / static_cast<double>(node_count);
    rep.coverage_warning = rep.excluded_fraction > 0.05;
    if (wsum == 0.0) {
        rep.center_ambiguous = true; // nothing usable on the disk
        return rep;
    }
    rep.average = wval / wsum;
    rep.node_max = vmax;
    rep.node_min = vmin;
    rep.slack = 0.02 * (vmax - vmin);
    rep.holds = rep.center_value <= rep.average + rep.slack;
    return rep;
}

// ---------------------------------------------------------------------------
// Circle integral probe: trapezoidal quadrature of sigma (and ln sigma) over
// a circle at every K of the schedule.  Divergent-trending means both curves
// grow by factor >= 2 from first to last K while staying increasing.
// ---------------------------------------------------------------------------
struct CircleIntegralReport {
    std::vector<index_t> schedule;
    std::vector<double> integral_sigma;
    std::vector<double> integral_log_sigma;
    double sigma_growth_factor = 0.0;
    double log_sigma_growth_factor = 0.0;
    bool sigma_divergent_trend = false;
    bool log_divergent_trend = false;
};

inline CircleIntegralReport circle_integral_probe(const CoefficientSource& src,
                                                  const IndexSequence& nu, double rho,
                                                  const Disk& circle,
                                                  std::vector<index_t> schedule, index_t S,
                                                  unsigned threads = 1,
                                                  RecenterPolicy policy = {}) {
    if (schedule.size() < 2) throw BadParam("circle_integral_probe needs a schedule of length >= 2");
    if (S < 8) throw BadParam("circle_integral_probe needs S >= 8 nodes");
    CircleIntegralReport rep;
    rep.schedule = schedule;
    const index_t k_max = schedule.back();
    std::vector<std::vector<double>> node_vals(static_cast<std::size_t>(S));
    const double two_pi = 6.28318530717958647692528676655900577;
    parallel_for_index(static_cast<std::size_t>(S), threads, [&](std::size_t j) {
        const double a = two_pi * static_cast<double>(j) / static_cast<double>(S);
        const std::complex<double> z{circle.cx + circle.radius * std::cos(a),
                                     circle.cy + circle.radius * std::sin(a)};
        const SigmaCurve curve = sigma_nu(src, nu, z, rho, k_max, policy);
        std::vector<double> vals;
        vals.reserve(schedule.size());
        for (index_t K : schedule)
            vals.push_back(curve.running_sup[static_cast<std::size_t>(K - 1)]);
        node_vals[j] = std::move(vals);
    });
    const double ds = two_pi * circle.radius / static_cast<double>(S);
    for (std::size_t t = 0; t < schedule.size(); ++t) {
        double s_int = 0.0, l_int = 0.0;
        for (index_t j = 0; j < S; ++j) {
            const double v = node_vals[static_cast<std::size_t>(j)][t];
            s_int += v * ds;
            l_int += std::log(std::max(v, 1e-300)) * ds;
        }
        rep.integral_sigma.push_back(s_int);
        rep.integral_log_sigma.push_back(l_int);
    }
    auto factor = [](const std::vector<double>& c) {
        return c.front() != 0.0 ? c.back() / c.front()
                                : (c.back() > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
    };
    auto increasing = [](const std::vector<double>& c) {
        for (std::size_t i = 1; i < c.size(); ++i)
            if (!(c[i] > c[i - 1])) return false;
        return true;
    };
    rep.sigma_growth_factor = factor(rep.integral_sigma);
    rep.log_sigma_growth_factor = factor(rep.integral_log_sigma);
    rep.sigma_divergent_trend = increasing(rep.integral_sigma) && rep.sigma_growth_factor >= 2.0;
    rep.log_divergent_trend =
        increasing(rep.integral_log_sigma) && rep.log_sigma_growth_factor >= 2.0;
    return rep;
}

// ---------------------------------------------------------------------------
// Exceptional-set scan: per-node gap between the full-sequence theta and the
// nu-restricted theta on a rectangular grid.  Heat-map data only, no verdict.
// ---------------------------------------------------------------------------
struct GridSpec {
    double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
    index_t nx = 0, ny = 0;
};

struct ScanRow {
    double x, y, gap;
};

inline std::vector<ScanRow> exceptional_set_scan(const CoefficientSource& src,
                                                 const IndexSequence& nu, const GridSpec& grid,
                                                 KWindow kw, unsigned threads = 1,
                                                 RecenterPolicy policy = {}) {
    std::vector<ScanRow> rows(static_cast<std::size_t>(std::max<index_t>(0, grid.nx) *
                                                       std::max<index_t>(0, grid.ny)));
    if (rows.empty()) return rows;
    parallel_for_index(rows.size(), threads, [&](std::size_t idx) {
        const index_t iy = static_cast<index_t>(idx) / grid.nx;
        const index_t ix = static_cast<index_t>(idx) % grid.nx;
        const double x = grid.nx == 1 ? grid.x0
                                      : grid.x0 + (static_cast<double>(ix) * (grid.x1 - grid.x0)) /
                                                      static_cast<double>(grid.nx - 1);
        const double y = grid.ny == 1 ? grid.y0
                                      : grid.y0 + (static_cast<double>(iy) * (grid.y1 - grid.y0)) /
                                                      static_cast<double>(grid.ny - 1);
        const detail::PairSup p =
            detail::pair_sup(detail::Functional::theta, src, nu, {x, y}, kw, 0.0, policy);
        double gap = std::numeric_limits<double>::quiet_NaN();
        if (p.nu_value && p.full_value) gap = *p.full_value - *p.nu_value;
        rows[idx] = ScanRow{x, y, gap};
    });
    return rows;
}

} // namespace efg
