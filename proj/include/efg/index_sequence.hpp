#pragma once

// Strictly increasing sequences of positive integers (derivative-index
// subsequences) with membership tests, complements, and the subexponential
// growth diagnostic.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "efg/errors.hpp"

namespace efg {

using index_t = std::int64_t;

namespace detail {

struct SeqImpl {
    virtual ~SeqImpl() = default;
    virtual index_t nth(index_t k) const = 0; // 1-based
    virtual bool contains(index_t n) const = 0;
    virtual std::string describe() const = 0;
};

struct ArithmeticSeq final : SeqImpl {
    index_t q, r, first;
    ArithmeticSeq(index_t q_, index_t r_) : q(q_), r(r_ % q_) {
        first = (r == 0) ? q : r;
    }
    index_t nth(index_t k) const override { return first + (k - 1) * q; }
    bool contains(index_t n) const override { return n >= 1 && n % q == r; }
    std::string describe() const override {
        return "arith(q=" + std::to_string(q) + ",r=" + std::to_string(r) + ")";
    }
};

struct SquareSeq final : SeqImpl {
    index_t nth(index_t k) const override { return k * k; }
    bool contains(index_t n) const override {
        if (n < 1) return false;
        index_t s = static_cast<index_t>(std::sqrt(static_cast<double>(n)));
        for (index_t c = std::max<index_t>(1, s - 1); c <= s + 1; ++c)
            if (c * c == n) return true;
        return false;
    }
    std::string describe() const override { return "squares"; }
};

inline bool is_prime(index_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (index_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

struct PrimeSeq final : SeqImpl {
    index_t nth(index_t k) const override {
        index_t count = 0, n = 1;
        while (count < k) {
            ++n;
            if (is_prime(n)) ++count;
        }
        return n;
    }
    bool contains(index_t n) const override { return is_prime(n); }
    std::string describe() const override { return "primes"; }
};

struct PowerSeq final : SeqImpl {
    index_t b;
    explicit PowerSeq(index_t b_) : b(b_) {}
    index_t nth(index_t k) const override {
        index_t v = 1;
        for (index_t i = 0; i < k; ++i) {
            if (v > (std::numeric_limits<index_t>::max() / b))
                return std::numeric_limits<index_t>::max();
            v *= b;
        }
        return v;
    }
    bool contains(index_t n) const override {
        if (n < b) return false;
        while (n % b == 0) n /= b;
        return n == 1;
    }
    std::string describe() const override { return "power(b=" + std::to_string(b) + ")"; }
};

struct ListSeq final : SeqImpl {
    std::vector<index_t> xs;
    explicit ListSeq(std::vector<index_t> v) : xs(std::move(v)) {
        if (xs.empty()) throw BadParam("explicit index list must be nonempty");
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (xs[i] < 1 || (i > 0 && xs[i] <= xs[i - 1]))
                throw BadParam("explicit index list must be strictly increasing positive integers");
        }
    }
    index_t nth(index_t k) const override {
        if (k < 1 || static_cast<std::size_t>(k) > xs.size())
            throw DomainError("explicit list index out of range");
        return xs[static_cast<std::size_t>(k - 1)];
    }
    bool contains(index_t n) const override {
        return std::binary_search(xs.begin(), xs.end(), n);
    }
    std::string describe() const override { return "list(" + std::to_string(xs.size()) + ")"; }
};

struct ComplementSeq final : SeqImpl {
    std::shared_ptr<const SeqImpl> inner;
    explicit ComplementSeq(std::shared_ptr<const SeqImpl> in) : inner(std::move(in)) {}
    index_t nth(index_t k) const override {
        index_t count = 0, n = 0;
        while (count < k) {
            ++n;
            if (!inner->contains(n)) ++count;
        }
        return n;
    }
    bool contains(index_t n) const override { return n >= 1 && !inner->contains(n); }
    std::string describe() const override { return "complement(" + inner->describe() + ")"; }
};

// Full sequence of naturals; used internally for full-sequence functionals.
struct NaturalSeq final : SeqImpl {
    index_t nth(index_t k) const override { return k; }
    bool contains(index_t n) const override { return n >= 1; }
    std::string describe() const override { return "naturals"; }
};

} // namespace detail

class IndexSequence {
public:
    static IndexSequence arithmetic(index_t q, index_t r) {
        if (q < 2) throw BadParam("arithmetic sequence requires q >= 2");
        if (r < 0 || r >= q) throw BadParam("arithmetic residue must satisfy 0 <= r < q");
        return IndexSequence(std::make_shared<detail::ArithmeticSeq>(q, r));
    }
    static IndexSequence evens() { return arithmetic(2, 0); }
    static IndexSequence odds() { return arithmetic(2, 1); }
    static IndexSequence squares() { return IndexSequence(std::make_shared<detail::SquareSeq>()); }
    static IndexSequence primes() { return IndexSequence(std::make_shared<detail::PrimeSeq>()); }
    static IndexSequence power(index_t b) {
        if (b < 2) throw BadParam("power sequence requires b >= 2");
        return IndexSequence(std::make_shared<detail::PowerSeq>(b));
    }
    static IndexSequence explicit_list(std::vector<index_t> xs) {
        return IndexSequence(std::make_shared<detail::ListSeq>(std::move(xs)));
    }
    static IndexSequence naturals() { return IndexSequence(std::make_shared<detail::NaturalSeq>()); }

    index_t nth(index_t k) const { return impl_->nth(k); }
    bool contains(index_t n) const { return impl_->contains(n); }
    std::string describe() const { return impl_->describe(); }

    // Largest k with nth(k) <= n, or 0 if none.
    index_t count_leq(index_t n) const {
        if (n < 1 || nth(1) > n) return 0;
        index_t lo = 1, hi = 1;
        while (nth(hi) <= n) {
            if (nth(hi) == std::numeric_limits<index_t>::max()) break;
            lo = hi;
            hi *= 2;
        }
        while (lo < hi) { // invariant: nth(lo) <= n < nth(hi)
            index_t mid = lo + (hi - lo + 1) / 2;
            if (nth(mid) <= n) lo = mid; else hi = mid - 1;
        }
        return lo;
    }

    // k-window {k : n_lo <= nth(k) <= n_hi}; first > last means empty.
    std::pair<index_t, index_t> k_window_for(index_t n_lo, index_t n_hi) const {
        index_t hi = count_leq(n_hi);
        index_t lo = count_leq(n_lo - 1) + 1;
        return {lo, hi};
    }

    friend IndexSequence complement(const IndexSequence& nu, index_t horizon);

private:
    explicit IndexSequence(std::shared_ptr<const detail::SeqImpl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const detail::SeqImpl> impl_;
};

// Complement within the naturals; lazily extendable past the horizon.
// NotProper when nu covers a cofinite initial segment as far as the horizon
// shows (no non-member in (horizon/2, horizon]).
inline IndexSequence complement(const IndexSequence& nu, index_t horizon) {
    if (horizon < 2) throw BadParam("complement horizon must be >= 2");
    bool any_gap = false;
    for (index_t n = horizon; n > horizon / 2; --n) {
        if (!nu.contains(n)) {
            any_gap = true;
            break;
        }
    }
    if (!any_gap)
        throw NotProper("sequence covers a cofinite set up to the horizon; complement is degenerate");
    return IndexSequence(std::make_shared<detail::ComplementSeq>(nu.impl_));
}

// Finite-prefix growth diagnostic for the subexponential hypothesis
// n_{k+1}/n_k -> 1.  Pure heuristic, not a proof.
struct SubexponentialReport {
    double max_tail_ratio = 0.0; // max over k in [K/2, K] of n_{k+1}/n_k
    enum class Trend { decreasing, increasing, flat } trend = Trend::flat;
    bool flagged_non_subexponential = false;
};

inline SubexponentialReport subexponential_diagnostic(const IndexSequence& nu, index_t K) {
    if (K < 10) throw BadParam("subexponential diagnostic requires K >= 10");
    SubexponentialReport rep;
    std::vector<double> ratios;
    for (index_t k = K / 2; k <= K; ++k) {
        double r = static_cast<double>(nu.nth(k + 1)) / static_cast<double>(nu.nth(k));
        ratios.push_back(r);
        rep.max_tail_ratio = std::max(rep.max_tail_ratio, r);
    }
    const std::size_t h = ratios.size() / 2;
    double first = 0.0, second = 0.0;
    for (std::size_t i = 0; i < h; ++i) first += ratios[i];
    for (std::size_t i = h; i < ratios.size(); ++i) second += ratios[i];
    first /= static_cast<double>(h);
    second /= static_cast<double>(ratios.size() - h);
    const double eps = 1e-12;
    if (second < first - eps) rep.trend = SubexponentialReport::Trend::decreasing;
    else if (second > first + eps) rep.trend = SubexponentialReport::Trend::increasing;
    else rep.trend = SubexponentialReport::Trend::flat;
    rep.flagged_non_subexponential =
        (rep.max_tail_ratio > 1.2 && rep.trend != SubexponentialReport::Trend::decreasing) ||
        rep.max_tail_ratio >= 3.0;
    return rep;
}

} // namespace efg
