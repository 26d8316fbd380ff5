#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace partitio::detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Counter-based stream: the i-th draw depends only on (seed, i), so results
// do not depend on how work is split between workers.
class counter_rng {
  public:
    explicit counter_rng(std::uint64_t seed) : key_(splitmix64(seed ^ 0x5851f42d4c957f2dULL)) {}

    std::uint64_t bits(std::uint64_t index, std::uint64_t lane = 0) const {
        return splitmix64(key_ ^ splitmix64(index * 0x2545f4914f6cdd1dULL + lane));
    }
    double uniform(std::uint64_t index, std::uint64_t lane = 0) const {
        return static_cast<double>(bits(index, lane) >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t key_;
};

inline unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [0, count). Exceptions from workers are rethrown.
template <class F>
void parallel_for(std::size_t count, unsigned workers, F&& body) {
    workers = std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(count, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> g(failure_lock);
                    if (!failure) failure = std::current_exception();
                    next.store(count);
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace partitio::detail
