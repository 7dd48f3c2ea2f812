#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace fnls {

/// Counter-based generator: value(i) depends only on (seed, i), so draws are
/// random-access and runs are reproducible regardless of evaluation order.
/// Ensemble member i uses seed ^ i.
class CounterRng {
public:
    explicit CounterRng(uint64_t seed) : seed_(seed) {}

    uint64_t bits(uint64_t counter) const {
        uint64_t z = seed_ + (counter + 1) * 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in (0, 1].
    double uniform(uint64_t counter) const {
        return (static_cast<double>(bits(counter) >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; consumes counters 2k and 2k+1.
    double gaussian(uint64_t k) const {
        const double u1 = uniform(2 * k);
        const double u2 = uniform(2 * k + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    CounterRng member(uint64_t i) const { return CounterRng(seed_ ^ i); }

    uint64_t seed() const { return seed_; }

private:
    uint64_t seed_;
};

} // namespace fnls
