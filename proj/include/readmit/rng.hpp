#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace readmit {

/// Deterministic random stream. All shuffles and draws in the library go
/// through this wrapper so results depend only on the seed, never on the
/// standard library's unspecified distribution algorithms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t bounded(std::uint64_t n) {
        // Rejection sampling keeps the draw unbiased and deterministic.
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = engine_();
            if (r >= threshold) return r % n;
        }
    }

    /// Uniform real in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(bounded(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

/// Seed for parallel unit `index` of a task seeded with `seed`. Parallel and
/// serial execution draw from identical per-unit streams.
inline std::uint64_t unit_seed(std::uint64_t seed, std::uint64_t index) {
    return seed + index;
}

}  // namespace readmit
