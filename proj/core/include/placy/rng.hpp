#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace placy {

// All randomness in the library flows through this wrapper. The core engine
// is std::mt19937_64 (fully specified by the standard); uniforms are built
// from the top 53 bits of the raw output and normals via the Box-Muller
// transform, so no implementation-defined std::*_distribution is involved.
// Results are bit-identical across reruns and thread counts, and across
// platforms up to libm rounding.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal. Box-Muller; the second value of each pair is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 on (0, 1] keeps the logarithm finite.
        const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Stream roles used to derive independent substreams from one master seed.
namespace stream_role {
inline constexpr std::uint64_t path_noise = 1; // one stream per variable
inline constexpr std::uint64_t dag_draw = 2;   // one stream per scenario
} // namespace stream_role

namespace detail {
// SplitMix64 finalizer (Steele, Lea, Flood 2014).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
} // namespace detail

/// Seed for the substream (role, index) of a master seed. Streams for
/// distinct (role, index) pairs are independent, so adding variables never
/// perturbs the draws of existing ones.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t role, std::uint64_t index) {
    std::uint64_t s = detail::splitmix64(seed);
    s = detail::splitmix64(s ^ detail::splitmix64(role));
    s = detail::splitmix64(s ^ detail::splitmix64(index));
    return s;
}

inline Rng make_stream(std::uint64_t seed, std::uint64_t role, std::uint64_t index = 0) {
    return Rng(derive_stream(seed, role, index));
}

} // namespace placy
