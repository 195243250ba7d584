#include "resonance/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace resonance {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RESONANCE_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

void parallel_chunks(std::size_t n, std::size_t chunk_size, int threads,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    if (chunk_size == 0) chunk_size = 1;
    std::size_t n_chunks = (n + chunk_size - 1) / chunk_size;
    threads = resolve_threads(threads);
    std::size_t workers = static_cast<std::size_t>(threads);
    if (workers > n_chunks) workers = n_chunks;

    if (workers <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) {
            std::size_t b = c * chunk_size;
            std::size_t e = b + chunk_size < n ? b + chunk_size : n;
            fn(b, e);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= n_chunks) break;
            std::size_t b = c * chunk_size;
            std::size_t e = b + chunk_size < n ? b + chunk_size : n;
            fn(b, e);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t i = 1; i < workers; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

}  // namespace resonance
