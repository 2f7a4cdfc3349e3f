#include "critorb/parallel.hpp"

#include <atomic>

namespace critorb {

namespace {
std::atomic<int> g_threads{0};  // 0 = hardware default
}

int worker_threads() {
    int n = g_threads.load();
    if (n > 0) return n;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void set_worker_threads(int n) { g_threads.store(n < 0 ? 0 : n); }

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body) {
    if (end <= begin) return;
    std::size_t total = end - begin;
    int nw = std::min<std::size_t>(static_cast<std::size_t>(worker_threads()), total);
    if (nw <= 1) {
        for (std::size_t i = begin; i < end; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nw));
    std::size_t chunk = (total + static_cast<std::size_t>(nw) - 1) / static_cast<std::size_t>(nw);
    for (int w = 0; w < nw; ++w) {
        std::size_t lo = begin + static_cast<std::size_t>(w) * chunk;
        std::size_t hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace critorb
