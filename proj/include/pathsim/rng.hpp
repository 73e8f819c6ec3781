#pragma once

#include <cstdint>
#include <random>

namespace pathsim {

/// Mixes a 64-bit value with the splitmix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Derives a child seed from a master seed and a sub-stream selector.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream_id) noexcept;

/// Seeded random stream.
///
/// The engine is std::mt19937_64 (sequence fixed by the C++ standard) seeded
/// from derive_seed(seed, stream_id). Uniforms take the top 53 bits of a
/// draw; normals use the Marsaglia polar method and cache the spare value.
/// A stream is single-owner; parallel consumers take distinct stream ids.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    /// Uniform on [0, 1).
    double uniform();
    /// Uniform integer on [0, bound). bound must be positive.
    std::uint64_t uniform_index(std::uint64_t bound);
    /// Standard normal draw.
    double standard_normal();

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Draw from N(mean, sd^2). Throws std::invalid_argument unless sd > 0.
double normal_sample(RngStream& rng, double mean, double sd);

/// True with probability p.
bool bernoulli_sample(RngStream& rng, double p);

}  // namespace pathsim
