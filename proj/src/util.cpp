#include "zm/util.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace zm {

unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for_workers(
    std::size_t n, unsigned threads,
    const std::function<void(unsigned, std::size_t, std::size_t)>& fn) {
    unsigned t = resolve_threads(threads);
    if (n == 0) return;
    if (t <= 1 || n == 1) {
        fn(0, 0, n);
        return;
    }
    t = static_cast<unsigned>(std::min<std::size_t>(t, n));
    std::vector<std::thread> pool;
    pool.reserve(t);
    std::size_t chunk = (n + t - 1) / t;
    for (unsigned w = 0; w < t; ++w) {
        std::size_t b = static_cast<std::size_t>(w) * chunk;
        std::size_t e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back(fn, w, b, e);
    }
    for (auto& th : pool) th.join();
}

void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
    parallel_for_workers(n, threads,
                         [&](unsigned, std::size_t b, std::size_t e) { fn(b, e); });
}

}  // namespace zm
