#include "labelnoise/rng.hpp"

#include <cmath>
#include <numbers>

namespace labelnoise {

std::uint64_t stream_seed(SeedSpec seed, std::uint64_t slice_index, std::uint32_t op_tag) noexcept {
    std::uint64_t h = mix64(seed.global_seed);
    h = mix64(h ^ slice_index);
    h = mix64(h ^ (0xd1b54a32d192ed03ULL + op_tag));
    return h;
}

Stream::Stream(std::uint64_t seed) noexcept {
    // SplitMix64 sequence; never yields the all-zero state.
    std::uint64_t s = seed;
    for (auto& word : state_) {
        word = mix64(s);
        s += 0x9e3779b97f4a7c15ULL;
    }
}

namespace {
constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }
}  // namespace

std::uint64_t Stream::next() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Stream::uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t Stream::below(std::uint64_t bound) noexcept {
    // Rejection keeps the draw unbiased: values below 2^64 mod bound are redrawn.
    const std::uint64_t threshold = (0 - bound) % bound;
    std::uint64_t x = next();
    while (x < threshold) {
        x = next();
    }
    return x % bound;
}

double Stream::normal() noexcept {
    // u1 in (0, 1] keeps the logarithm finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace labelnoise
