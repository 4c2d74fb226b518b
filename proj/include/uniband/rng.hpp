#pragma once

#include <cstdint>
#include <cmath>

namespace uniband {

// Counter-based random stream. Every draw is a pure hash of
// (seed, stream, counter), so independently keyed streams produce the
// same values no matter how work is split across threads.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream_hi, std::uint64_t stream_lo = 0)
        : seed_(seed), stream_hi_(stream_hi), stream_lo_(stream_lo) {}

    std::uint64_t next_u64() {
        std::uint64_t x = seed_;
        x = mix(x ^ (stream_hi_ * 0x9e3779b97f4a7c15ULL));
        x = mix(x ^ (stream_lo_ * 0xbf58476d1ce4e5b9ULL));
        x = mix(x ^ (counter_ * 0x94d049bb133111ebULL));
        ++counter_;
        return mix(x);
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; two uniforms per draw.
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    double normal(double mean, double sigma) { return mean + sigma * normal(); }

    bool bernoulli(double p) { return uniform() < p; }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t stream_hi_;
    std::uint64_t stream_lo_;
    std::uint64_t counter_ = 0;
};

// Stable 64-bit hash for deriving stream ids from strings.
inline std::uint64_t fnv1a64(const char* data, std::size_t n) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= static_cast<unsigned char>(data[i]);
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace uniband
