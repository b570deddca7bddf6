#pragma once

#include <cstdint>

namespace risrate {

// splitmix64; used only to expand seeds into generator state.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

// xoshiro256** (Blackman/Vigna). The generator identity and the stream
// derivation below are part of the reproducibility contract and are
// echoed in output metadata as "xoshiro256ss/splitmix64-streams/v1".
class Xoshiro256ss {
  public:
    // Stream for (seed, stream_index): splitmix64 seeded with
    // seed XOR (0x9E3779B97F4A7C15 * (stream_index + 1)) expands into the
    // four state words.
    Xoshiro256ss(std::uint64_t seed, std::uint64_t stream_index) {
        SplitMix64 sm(seed ^ (0x9E3779B97F4A7C15ULL * (stream_index + 1)));
        for (auto& w : s_) w = sm.next();
    }

    std::uint64_t next() {
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

    // uniform in (0, 1]: 53-bit mantissa, never exactly 0 so it is safe
    // under log()
    double uniform_pos() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

inline constexpr const char* kRngId = "xoshiro256ss/splitmix64-streams/v1";

}  // namespace risrate
