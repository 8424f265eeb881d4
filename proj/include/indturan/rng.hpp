#pragma once

// Deterministic random streams.
//
// Generator: SplitMix64 in counter mode. Output i (i = 0, 1, ...) of the
// stream seeded with s is mix64(s + (i + 1) * 0x9E3779B97F4A7C15), where
// mix64 is the SplitMix64 finaliser. Uniform integers use Lemire's
// multiply-and-reject method and uniform reals take the top 53 bits, so a
// (seed, call sequence) pair yields the same values on every platform.

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <utility>

namespace indturan {

using Seed = std::uint64_t;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Child seed for a path of indices below `seed` (worker, trial, level, ...).
constexpr Seed derive_seed(Seed seed, std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t h = mix64(seed ^ 0x6A09E667F3BCC909ULL);
    for (auto p : path) h = mix64(h ^ mix64(p + 0x9E3779B97F4A7C15ULL));
    return h;
}

class Rng {
public:
    using result_type = std::uint64_t;
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    explicit Rng(Seed seed = 0) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        state_ += kGamma;
        return mix64(state_);
    }

    /// Uniform in [0, 1).
    double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            __extension__ const unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
            if (static_cast<std::uint64_t>(m) >= threshold)
                return static_cast<std::uint64_t>(m >> 64);
        }
    }

    bool bernoulli(double p) noexcept { return uniform01() < p; }

    template <class T>
    void shuffle(std::span<T> items) noexcept {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace indturan
