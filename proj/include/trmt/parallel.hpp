#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace trmt {

inline int default_thread_count() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(i) for i in [0, count). Work units write into caller-owned slots
// indexed by i and the caller reduces in index order, so results do not
// depend on the thread count.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    threads = std::max(1, std::min<int>(threads, static_cast<int>(count)));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&fn, t, threads, count]() {
            for (std::size_t i = static_cast<std::size_t>(t); i < count; i += threads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace trmt
