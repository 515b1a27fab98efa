#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace phlab {

inline constexpr double kPi = std::numbers::pi;

// Canonical representative in [0, 1).
inline double wrap_unit(double v) {
    double w = v - std::floor(v);
    return (w >= 1.0) ? 0.0 : w;  // floor can round up for tiny negatives
}

// Signed displacement to the nearest integer, in [-1/2, 1/2).
inline double wrap_signed(double v) {
    return v - std::round(v);
}

// Distance between angles regarded as lines, i.e. on R/(pi Z).
inline double line_angle_distance(double a, double b) {
    double d = std::fmod(std::fabs(a - b), kPi);
    return std::min(d, kPi - d);
}

// Reduce an angle to [0, pi).
inline double wrap_line_angle(double a) {
    double w = std::fmod(a, kPi);
    if (w < 0.0) w += kPi;
    return (w >= kPi) ? 0.0 : w;
}

// Quintic smoothstep: 0 at u<=0, 1 at u>=1, C^2 across the joins.
inline double smoothstep5(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return ((6.0 * u - 15.0) * u + 10.0) * u * u * u;
}

inline double smoothstep5_deriv(double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    double v = u * (1.0 - u);
    return 30.0 * v * v;
}

// Minimal deterministic RNG helpers: identical streams on every platform,
// unlike std::uniform_real_distribution.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double next_double(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

  private:
    std::uint64_t state_;
};

}  // namespace phlab
