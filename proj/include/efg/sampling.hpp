#pragma once

// Deterministic sampling of the plane.  Every sample is derived from
// (seed, index) through a counter-based generator, so the sample list is a
// pure function of the spec regardless of evaluation order or parallelism.

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "efg/errors.hpp"
#include "efg/index_sequence.hpp"

namespace efg {

struct Disk {
    double cx = 0.0;
    double cy = 0.0;
    double radius = 1.0;
};

namespace detail {

// splitmix64: tiny counter-based generator with solid mixing.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t idx) {
    const std::uint64_t h = splitmix64(splitmix64(seed ^ (stream * 0x9e3779b97f4a7c15ULL)) + idx);
    return static_cast<double>(h >> 11) * 0x1.0p-53; // [0, 1)
}

} // namespace detail

// Uniform point in the closed disk via the polar map (no rejection, so the
// (seed, index) -> point map is total and order-free).
inline std::complex<double> uniform_in_disk(const Disk& d, std::uint64_t seed, std::uint64_t index) {
    const double u1 = detail::uniform01(seed, 2 * index, 0);
    const double u2 = detail::uniform01(seed, 2 * index + 1, 1);
    const double r = d.radius * std::sqrt(u1);
    const double phi = 6.28318530717958647692528676655900577 * u2;
    return {d.cx + r * std::cos(phi), d.cy + r * std::sin(phi)};
}

struct SamplingSpec {
    Disk region;
    enum class Mode { uniform, grid } mode = Mode::uniform;
    std::uint64_t count = 0; // uniform mode
    std::uint64_t seed = 0;
    index_t grid_side = 0;   // grid mode: side x side over the bounding square
    std::vector<std::complex<double>> explicit_points; // appended after the drawn samples
};

// Materialize the sample list.  Grid nodes are computed index-first
// (x0 + (i * span) / (side - 1)) so integer-valued nodes such as 0 come out
// exact; nodes outside the closed disk are dropped.
inline std::vector<std::complex<double>> materialize_samples(const SamplingSpec& spec) {
    std::vector<std::complex<double>> out;
    if (spec.mode == SamplingSpec::Mode::uniform) {
        out.reserve(spec.count + spec.explicit_points.size());
        for (std::uint64_t i = 0; i < spec.count; ++i)
            out.push_back(uniform_in_disk(spec.region, spec.seed, i));
    } else {
        if (spec.grid_side < 0) throw BadParam("grid side must be nonnegative");
        const index_t side = spec.grid_side;
        const double span = 2.0 * spec.region.radius;
        const double x0 = spec.region.cx - spec.region.radius;
        const double y0 = spec.region.cy - spec.region.radius;
        for (index_t iy = 0; iy < side; ++iy) {
            for (index_t ix = 0; ix < side; ++ix) {
                const double x = side == 1 ? spec.region.cx
                                           : x0 + (static_cast<double>(ix) * span) /
                                                      static_cast<double>(side - 1);
                const double y = side == 1 ? spec.region.cy
                                           : y0 + (static_cast<double>(iy) * span) /
                                                      static_cast<double>(side - 1);
                const double dx = x - spec.region.cx, dy = y - spec.region.cy;
                if (dx * dx + dy * dy <= spec.region.radius * spec.region.radius * (1.0 + 1e-12))
                    out.emplace_back(x, y);
            }
        }
    }
    out.insert(out.end(), spec.explicit_points.begin(), spec.explicit_points.end());
    return out;
}

} // namespace efg
