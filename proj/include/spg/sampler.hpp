#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spg/denoiser.hpp"
#include "spg/guidance.hpp"
#include "spg/rng.hpp"
#include "spg/schedule.hpp"

namespace spg {

// Per-chain record: the trust-region trace |implied_eps(x_t, guided x0, t)|
// at every step (chronological, t = T first), plus call and time accounting.
struct SampleDiagnostics {
    std::vector<double> eps_norm;
    long denoiser_calls = 0;
    double wall_time_s = 0.0;
};

// The two random streams a sampling chain consumes. Ancestral noise and
// guidance perturbation noise are kept separate so that disabling guidance
// never changes the baseline sample path.
struct ChainRng {
    Rng ancestral;
    Rng perturb;

    explicit ChainRng(std::uint64_t seed)
        : ancestral(derive_seed(seed, 0x414e4345)), perturb(derive_seed(seed, 0x50455254)) {}

    static ChainRng for_chain(std::uint64_t base_seed, std::uint64_t chain_index) {
        return ChainRng(derive_seed(base_seed, 0x434841494e, chain_index));
    }
};

struct SamplerOptions {
    // Clamp the guided prediction to [-limit, limit] when limit > 0.
    double clamp_limit = 0.0;
};

// DDPM ancestral sampling from x_T ~ N(0, I) down to x_0, applying the
// guidance stack at every step.
std::pair<Trajectory, SampleDiagnostics> ddpm_sample(const Denoiser& g, const NoiseSchedule& schedule,
                                                     const GuidanceStack& stack, const Condition& c, ChainRng& rng,
                                                     const SamplerOptions& options = {});

struct ChainResult {
    Trajectory trajectory;
    SampleDiagnostics diagnostics;
    std::string error;  // empty on success

    bool ok() const { return error.empty(); }
};

// Independent chains with per-chain streams derived from (base_seed, index).
// Results are identical for any worker count and ordered by input index;
// a failed chain carries its error without aborting the others.
std::vector<ChainResult> batch_sample(const Denoiser& g, const NoiseSchedule& schedule, const GuidanceStack& stack,
                                      const std::vector<Condition>& conditions, std::uint64_t base_seed,
                                      int threads = 1, const SamplerOptions& options = {});

}  // namespace spg
