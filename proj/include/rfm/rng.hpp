#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace rfm {

// Counter-based random stream: a splitmix64 walk whose initial state is a
// hash of (seed, stream [, substream]). Streams derived from distinct keys
// are independent for practical purposes, so each row / replicate can own
// its stream and results do not depend on scheduling or worker count.
class RandomStream {
public:
    using result_type = std::uint64_t;

    RandomStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0) {
        state_ = mix(seed + 0x9E3779B97F4A7C15ULL);
        state_ = mix(state_ ^ (0xBF58476D1CE4E5B9ULL * (stream + 1)));
        if (substream != 0) state_ = mix(state_ ^ (0x94D049BB133111EBULL * substream));
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // Uniform on [0, 1).
    double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe under log().
    double uniform01_open() {
        return (static_cast<double>((*this)() >> 11) + 1.0) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Standard normal via Box-Muller; the second value of each pair is cached.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01_open();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace rfm
