#ifndef HYPATLAS_RNG_HPP
#define HYPATLAS_RNG_HPP

#include <cstdint>

namespace hypatlas {

/// splitmix64; deterministic across platforms, cheap to seed per index.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    /// uniform in [0, 1)
    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    /// uniform in [a, b)
    double uniform(double a, double b) { return a + (b - a) * u01(); }
    /// uniform in {0, ..., n-1}
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    bool coin() { return (next() & 1) != 0; }
};

/// Stream seeded from (seed, index): results do not depend on worker layout.
inline SplitMix64 stream_rng(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0x9E3779B97F4A7C15ull * (index + 1)));
    mix.next();
    return mix;
}

}  // namespace hypatlas

#endif
