#pragma once

#include <cstdint>
#include <random>

#include "spg/trajectory.hpp"

namespace spg {

// Deterministic random stream. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the uniform and gaussian mappings are
// done by hand so that streams do not depend on the standard library's
// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // [0, 1), 53-bit resolution
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // N(0, 1) via Box-Muller; pairs are generated together and the spare
    // is handed out on the next call.
    double gaussian();

    // [0, n)
    std::uint64_t below(std::uint64_t n);

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Splitmix-style avalanche, used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t z);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b);

Trajectory gaussian_trajectory(int channels, int frames, double frame_rate, Rng& rng);
Trajectory gaussian_like(const Trajectory& shape_of, Rng& rng);

}  // namespace spg
