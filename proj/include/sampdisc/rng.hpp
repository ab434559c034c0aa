#pragma once

#include <cstdint>

namespace sampdisc {

// Deterministic random source. Hand-rolled xoshiro256++ seeded through
// splitmix64 so that streams are bit-reproducible across platforms and
// standard-library versions (std:: distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // uniform on [0, 1), 53 mantissa bits
    double uniform();

    // standard normal via Box-Muller, spare value cached
    double normal();

private:
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Stable per-task seed derivation: mixes (seed, index) through splitmix64.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace sampdisc
