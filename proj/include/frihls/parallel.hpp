#pragma once
// Deterministic parallelism: work is cut into fixed-size chunks and partial
// results are combined in chunk order, so outputs are byte-identical for any
// worker count. Chunk size is a constant, never derived from the pool size.

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace frihls {

inline int hardware_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

constexpr std::int64_t kChunk = 1024;

// fn(i) for i in [0, n); no reduction.
inline void parallel_for(int threads, std::int64_t n,
                         const std::function<void(std::int64_t)>& fn) {
    if (n <= 0) return;
    if (threads <= 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::int64_t chunks = (n + kChunk - 1) / kChunk;
    std::atomic<std::int64_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::int64_t c = next.fetch_add(1);
            if (c >= chunks) return;
            std::int64_t lo = c * kChunk, hi = std::min(n, lo + kChunk);
            for (std::int64_t i = lo; i < hi; ++i) fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

// Deterministic sum of term(i): per-chunk partials summed left-to-right, then
// combined in chunk order.
inline double parallel_sum(int threads, std::int64_t n,
                           const std::function<double(std::int64_t)>& term) {
    if (n <= 0) return 0.0;
    std::int64_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(chunks, 0.0);
    std::atomic<std::int64_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::int64_t c = next.fetch_add(1);
            if (c >= chunks) return;
            std::int64_t lo = c * kChunk, hi = std::min(n, lo + kChunk);
            double s = 0.0;
            for (std::int64_t i = lo; i < hi; ++i) s += term(i);
            partial[c] = s;
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
    }
    double s = 0.0;
    for (double p : partial) s += p;
    return s;
}

// Vector-valued variant: term(i, acc) adds its contribution into acc[0..dim).
inline std::vector<double> parallel_sum_vec(int threads, std::int64_t n, int dim,
                                            const std::function<void(std::int64_t, double*)>& term) {
    std::int64_t chunks = n <= 0 ? 0 : (n + kChunk - 1) / kChunk;
    std::vector<std::vector<double>> partial(chunks, std::vector<double>(dim, 0.0));
    std::atomic<std::int64_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::int64_t c = next.fetch_add(1);
            if (c >= chunks) return;
            std::int64_t lo = c * kChunk, hi = std::min(n, lo + kChunk);
            for (std::int64_t i = lo; i < hi; ++i) term(i, partial[c].data());
        }
    };
    if (threads <= 1 || chunks <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
    }
    std::vector<double> out(dim, 0.0);
    for (auto& p : partial)
        for (int k = 0; k < dim; ++k) out[k] += p[k];
    return out;
}

} // namespace frihls
