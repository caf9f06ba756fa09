#pragma once

#include <cstdint>
#include <random>

namespace codp {

// Seeded random source shared by all stochastic components. Every draw goes
// through the explicit helpers below so a run is fully reproducible from its
// seed.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t raw() { return engine_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double canonical() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi); a degenerate range collapses to lo.
    double uniform(double lo, double hi) {
        if (!(lo < hi)) return lo;
        return lo + (hi - lo) * canonical();
    }

    // Uniform integer in [lo, hi], both endpoints inclusive.
    int uniform_int(int lo, int hi) {
        if (hi <= lo) return lo;
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(engine_() % span);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace codp
