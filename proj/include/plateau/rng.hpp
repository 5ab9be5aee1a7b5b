#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace plateau {

/// Mixes a base seed with a path of stream coordinates (splitmix64 chain) so
/// that every (base_seed, seed_index, purpose, ...) gets an independent,
/// order-free seed.
std::uint64_t derive_seed(std::uint64_t base_seed, std::initializer_list<std::uint64_t> path);

// Stream purposes used with derive_seed.
enum class Stream : std::uint64_t {
    Initialization = 1,
    Shots = 2,
    Bootstrap = 3,
    Haar = 4,
    Trajectory = 5,
    Auxiliary = 6,
};

/// Deterministic random source. Uniform doubles are built from the top 53
/// bits of mt19937_64 so sequences are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform index in [0, n).
    std::uint64_t index(std::uint64_t n);
    /// Standard normal.
    double normal() { return normal_(engine_); }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace plateau
