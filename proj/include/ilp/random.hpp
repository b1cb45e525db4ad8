#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace ilp {

// Generator identity recorded in run reports. The engine sequence is fixed by
// the standard, and all variate transforms below are implemented here rather
// than borrowed from <random>'s distributions, whose output is
// implementation-defined. Same seed, same samples, on every platform.
inline constexpr const char* kRngName = "mt19937_64";

uint64_t splitmix64(uint64_t& state);

// Seedable sample stream with explicit, portable transforms.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform_real(double low, double high) {
        return low + next_unit() * (high - low);
    }

    // Uniform on [0, n) without modulo bias (bitmask rejection).
    uint64_t uniform_below(uint64_t n);

    // Uniform on [low, high], both ends inclusive.
    int64_t uniform_int(int64_t low, int64_t high) {
        return low + static_cast<int64_t>(uniform_below(static_cast<uint64_t>(high - low) + 1));
    }

    // Standard normal via the inverse CDF, one uniform per draw.
    double next_normal(double mean, double stddev);

    void fill(std::span<uint8_t> out);

private:
    std::mt19937_64 engine_;
};

// Rational-approximation inverse of the standard normal CDF, accurate to
// ~1e-15 over (0, 1).
double inverse_normal_cdf(double p);

// Cryptographic randomness for live padding and cover bytes.
void os_random_fill(std::span<uint8_t> out);

}  // namespace ilp
