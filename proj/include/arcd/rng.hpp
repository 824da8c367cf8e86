#pragma once

#include <cstdint>
#include <limits>

namespace arcd {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Key of stream `index` under master `seed`. Pure function of its arguments, so
/// replicate r sees the same deviates however the work is scheduled.
constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(mix64(seed) + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

/// xoshiro256** seeded from a stream key. Satisfies UniformRandomBitGenerator.
class StreamRng {
public:
    using result_type = std::uint64_t;

    StreamRng(std::uint64_t seed, std::uint64_t index) noexcept {
        std::uint64_t x = stream_key(seed, index);
        for (auto& word : s_) {
            x += 0x9E3779B97F4A7C15ULL;
            word = mix64(x);
        }
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

}  // namespace arcd
