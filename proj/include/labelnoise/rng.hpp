#pragma once

#include <array>
#include <cstdint>

namespace labelnoise {

/// Global seed for a run. Every random decision is derived from it.
struct SeedSpec {
    std::uint64_t global_seed = 0;

    friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

/// Tags separating the random streams of unrelated operations on the same slice.
enum class OpTag : std::uint32_t {
    synth_blob = 1,
    perturb_natural = 2,
    perturb_choppy = 3,
    perturb_random = 4,
    calibration_sample = 5,
};

/// SplitMix64 finalizer. A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/**
 * Seed of the stream owned by (slice_index, op_tag) under `seed`.
 *
 * Each input is folded in through a bijective mix, so for fixed values of the
 * other two arguments distinct slice indices (or distinct tags) can never
 * collide. Pure integer arithmetic: identical on every platform.
 */
std::uint64_t stream_seed(SeedSpec seed, std::uint64_t slice_index, std::uint32_t op_tag) noexcept;

inline std::uint64_t stream_seed(SeedSpec seed, std::uint64_t slice_index, OpTag tag) noexcept {
    return stream_seed(seed, slice_index, static_cast<std::uint32_t>(tag));
}

/**
 * @brief xoshiro256** generator with fixed, platform-independent derived draws.
 *
 * Uniform and normal draws are implemented here rather than through
 * <random> distributions, whose output is implementation-defined.
 * Normal draws use Box-Muller and consume exactly two words each, so the
 * number of words consumed never depends on a drawn value.
 */
class Stream {
public:
    using result_type = std::uint64_t;

    explicit Stream(std::uint64_t seed) noexcept;

    std::uint64_t next() noexcept;
    std::uint64_t operator()() noexcept { return next(); }
    static constexpr std::uint64_t min() noexcept { return 0; }
    static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform() noexcept;

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound) noexcept;

    /// Standard normal draw.
    double normal() noexcept;

private:
    std::array<std::uint64_t, 4> state_;
};

}  // namespace labelnoise
