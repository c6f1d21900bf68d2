#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace arl {

/// Counter-based generator: sample k of stream (seed) is a pure function
/// of (seed, k). This is the splitmix64 sequence evaluated at an
/// arbitrary counter, so parallel workers can jump anywhere without
/// shared state.
inline std::uint64_t counter_u64(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Uniform in [0,1).
inline double counter_u01(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(counter_u64(seed, counter) >> 11) * 0x1.0p-53;
}

/// Sequential convenience wrapper over the counter generator.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t start_counter = 0) : seed_(seed), ctr_(start_counter) {}

    std::uint64_t next_u64() { return counter_u64(seed_, ctr_++); }
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }
    std::uint64_t seed() const { return seed_; }
    /// Derived stream per the seed-splitting rule: stream i uses seed ^ i.
    Rng stream(std::uint64_t i) const { return Rng(seed_ ^ i); }

private:
    std::uint64_t seed_;
    std::uint64_t ctr_;
};

/// Worker cap from ARL_THREADS (defaults to 1; results never depend on it).
inline unsigned worker_count() {
    if (const char* env = std::getenv("ARL_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return 1;
}

/// Deterministic data-parallel reduction: the index range is cut into
/// fixed-size chunks, each chunk's partial sums are computed independently
/// (possibly on different threads) and combined in chunk order, so the
/// result is bit-identical for any worker count.
template <typename PartialFn>
std::vector<double> chunked_reduce(std::uint64_t n, std::size_t n_accumulators, PartialFn&& fn) {
    constexpr std::uint64_t kChunk = 1u << 16;
    const std::uint64_t n_chunks = n == 0 ? 0 : (n + kChunk - 1) / kChunk;
    std::vector<std::vector<double>> partials(n_chunks, std::vector<double>(n_accumulators, 0.0));

    auto run_chunk = [&](std::uint64_t c) {
        const std::uint64_t lo = c * kChunk;
        const std::uint64_t hi = std::min(n, lo + kChunk);
        fn(lo, hi, partials[c]);
    };

    unsigned workers = worker_count();
    if (workers <= 1 || n_chunks <= 1) {
        for (std::uint64_t c = 0; c < n_chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::uint64_t> next{0};
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::uint64_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) run_chunk(c);
            });
        }
        for (auto& t : pool) t.join();
    }

    std::vector<double> total(n_accumulators, 0.0);
    for (std::uint64_t c = 0; c < n_chunks; ++c)
        for (std::size_t a = 0; a < n_accumulators; ++a) total[a] += partials[c][a];
    return total;
}

}  // namespace arl
