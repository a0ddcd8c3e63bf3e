#pragma once

#include <cstdint>

namespace entroproj {

/**
 * Counter-free splittable generator: trial i derives its own stream from
 * (seed, i), so serial and parallel schedules produce identical draws.
 */
class SplitMix {
public:
    explicit SplitMix(std::uint64_t s) : state_(s) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // strictly inside (0,1), safe under log()
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xFF51AFD7ED558CCDull;
    x ^= x >> 33;
    x *= 0xC4CEB9FE1A85EC53ull;
    x ^= x >> 33;
    return x;
}

inline SplitMix trial_stream(std::uint64_t seed, std::uint64_t trial) {
    return SplitMix(mix64(seed + 0x632BE59BD9B4E019ull * (trial + 1)));
}

} // namespace entroproj
