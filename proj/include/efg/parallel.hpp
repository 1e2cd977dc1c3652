#pragma once

// Deterministic parallel map: results land in index-addressed slots and all
// reductions happen in index order afterwards, so the output is identical
// for any thread count.

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace efg {

template <class Fn>
void parallel_for_index(std::size_t count, unsigned threads, Fn&& fn) {
    if (count == 0) return;
    if (threads <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace efg
