#include "pathsim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace pathsim {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream_id) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream_id + 0x632BE59BD9B4E019ull));
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(derive_seed(seed, stream_id)) {}

double RngStream::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::uniform_index(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_index: bound must be positive");
    // Rejection sampling removes modulo bias.
    const std::uint64_t limit = engine_.max() - (engine_.max() % bound + 1) % bound;
    std::uint64_t draw;
    do {
        draw = engine_();
    } while (draw > limit);
    return draw % bound;
}

double RngStream::standard_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    has_spare_ = true;
    return u * factor;
}

double normal_sample(RngStream& rng, double mean, double sd) {
    if (!(sd > 0.0)) throw std::invalid_argument("normal_sample: sd must be positive");
    return mean + sd * rng.standard_normal();
}

bool bernoulli_sample(RngStream& rng, double p) { return rng.uniform() < p; }

}  // namespace pathsim
