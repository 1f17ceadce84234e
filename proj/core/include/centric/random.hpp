#ifndef CENTRIC_RANDOM_HPP
#define CENTRIC_RANDOM_HPP

#include <cstdint>
#include <random>

namespace centric {

/// SplitMix64 finalizer; a bijective mix of one 64-bit word.
std::uint64_t mix64(std::uint64_t x);

/// Counter-based child seed: the same (master, stream) pair always yields the
/// same seed, independent of the order streams are requested in.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/**
 * @brief Seeded generator with portable draws.
 *
 * The standard distributions are implementation-defined, so uniform, integer
 * and normal draws are computed here from raw mt19937_64 output.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, bound), bound > 0, without modulo bias.
    std::uint64_t below(std::uint64_t bound);

    /// Standard normal via Box-Muller.
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace centric

#endif
