#pragma once

#include <vector>

namespace spg {

// DDPM variance schedule. Arrays are 1-indexed by timestep t = 1..T; index 0
// holds the alpha_bar[0] = 1 convention, which makes posterior_var[1] = 0 so
// the final sampling step adds no noise.
struct NoiseSchedule {
    int T = 0;
    std::vector<double> beta;       // beta[0] unused
    std::vector<double> alpha;      // alpha[t] = 1 - beta[t]
    std::vector<double> alpha_bar;  // alpha_bar[t] = prod_{s<=t} alpha[s], alpha_bar[0] = 1
    // 1 - alpha_bar[t], accumulated as (1 - alpha_bar[t-1]) + alpha_bar[t-1]*beta[t]
    // so expressions like beta[1]/(1 - alpha_bar[1]) are exact where the algebra says so.
    std::vector<double> one_minus_alpha_bar;
    std::vector<double> posterior_var;  // (1 - alpha_bar[t-1]) * beta[t] / (1 - alpha_bar[t])

    bool valid_step(int t) const { return t >= 1 && t <= T; }
    void require_step(int t) const;
};

// Linear beta ramp from beta_start at t=1 to beta_end at t=T.
NoiseSchedule make_linear_schedule(int T, double beta_start, double beta_end);

// Derived arrays from explicit per-step betas (betas[0] is t=1).
NoiseSchedule make_schedule_from_betas(const std::vector<double>& betas);

inline constexpr int kDefaultScheduleSteps = 50;
inline constexpr double kDefaultBetaStart = 1e-4;
inline constexpr double kDefaultBetaEnd = 0.02;

}  // namespace spg
