#pragma once

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace dlm {

// Thread count resolution: explicit flag wins, then DLM_THREADS, then hardware.
inline unsigned resolve_threads(unsigned flag_value = 0) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("DLM_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return (unsigned)v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Pairwise (balanced tree) reduction; the tree shape depends only on the input
// length, so sums are byte-identical regardless of how terms were produced.
template <typename T>
inline T pairwise_sum(const std::vector<T>& terms) {
    if (terms.empty()) return T{};
    std::vector<T> level = terms;
    while (level.size() > 1) {
        std::vector<T> next;
        next.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(level[i] + level[i + 1]);
        if (level.size() % 2) next.push_back(level.back());
        level = std::move(next);
    }
    return level[0];
}

// Run f(i) for i in [0, n) on the given number of threads. Results must be
// written to per-index slots; the work split never affects them.
template <typename F>
inline void parallel_for(std::size_t n, unsigned threads, F f) {
    if (n == 0) return;
    if (threads <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    unsigned nt = threads < n ? threads : (unsigned)n;
    for (unsigned t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) f(i);
        });
    for (auto& th : pool) th.join();
}

} // namespace dlm
