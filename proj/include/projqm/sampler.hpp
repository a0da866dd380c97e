#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace projqm {

// SplitMix64 finalizer (Steele, Lea & Flood; constants 0xBF58476D1CE4E5B9,
// 0x94D049BB133111EB). Used in counter mode below: the k-th output depends
// only on (key, k), so streams split cleanly and chunks replay independently.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Deterministic counter-based generator: identical (seed, stream) gives a
// bit-identical sequence on every platform; distinct stream ids give
// statistically independent streams.
class SeededSampler {
public:
    explicit SeededSampler(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix64(mix64(seed + kGolden) + stream * kGolden)), counter_(0) {}

    // Child stream: independent of the parent sequence and of other ids.
    SeededSampler split(std::uint64_t stream) const {
        SeededSampler s(*this);
        s.key_ = mix64(key_ + (stream + 1) * kGolden);
        s.counter_ = 0;
        return s;
    }

    std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kGolden); }

    // Uniform on (0, 1]; the +1 keeps log() finite in Box-Muller.
    double next_uniform() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard complex Gaussian via Box-Muller in polar form: radius
    // sqrt(-2 ln u1), angle 2 pi u2. Re and Im are independent N(0,1).
    std::complex<double> next_complex_gaussian() {
        const double r = std::sqrt(-2.0 * std::log(next_uniform()));
        const double th = 2.0 * kPi * next_uniform();
        return {r * std::cos(th), r * std::sin(th)};
    }

    double next_gaussian() { return next_complex_gaussian().real(); }

private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
    static constexpr double kPi = 3.14159265358979323846;
    std::uint64_t key_;
    std::uint64_t counter_;
};

}  // namespace projqm
