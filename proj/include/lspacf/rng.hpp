#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lspacf {

/// splitmix64 finalizer.
inline std::uint64_t mix_seed(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed of an independent substream, e.g. one bootstrap replicate or one
/// Monte-Carlo run.  Results are then identical regardless of how the
/// substreams are scheduled across workers.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix_seed(mix_seed(seed) + stream);
}

/// mt19937_64 with an explicit Box-Muller Gaussian so the double stream is
/// bit-identical across standard-library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on (0, 1].
    double uniform01() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1p-53;
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace lspacf
