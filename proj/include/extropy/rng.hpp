#pragma once

// Reproducible random streams. Every replicate of an experiment owns an
// independent generator whose seed is a hash of (master seed, path...), so
// results never depend on how replicates are scheduled across threads.

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace extropy {

enum class StreamPurpose : std::uint64_t {
    Lifetimes = 0x6c69666554ULL,
    Censoring = 0x63656e736f72ULL,
    Bootstrap = 0x626f6f74ULL,
};

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline constexpr std::uint64_t derive_stream_seed(std::uint64_t master,
                                                  std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t h = splitmix64(master);
    for (auto p : path) h = splitmix64(h ^ splitmix64(p));
    return h;
}

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    RandomStream(std::uint64_t master, std::initializer_list<std::uint64_t> path)
        : engine_(derive_stream_seed(master, path)) {}

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform_open() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        // Lemire's rejection keeps the draw exact and portable.
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = engine_();
            const unsigned __int128 m = static_cast<unsigned __int128>(r) * bound;
            if (static_cast<std::uint64_t>(m) >= threshold) return static_cast<std::uint64_t>(m >> 64);
        }
    }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace extropy
