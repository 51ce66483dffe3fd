#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>

namespace edgestate {

// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Seed for stream `stream` of a run seeded with `master`. Replicate r of
// an experiment cell c uses derive_seed(derive_seed(master, c), r).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

// Cross-platform reproducible random source: std::mt19937_64 (whose output
// sequence is fixed by the standard) with hand-written distributions, since
// the std:: distributions are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform();
    // Uniform integer in [0, n); n > 0.
    std::size_t index(std::size_t n);
    bool bernoulli(double p) { return uniform() < p; }
    // Standard normal (Box-Muller, second variate cached).
    double normal();

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

}  // namespace edgestate
