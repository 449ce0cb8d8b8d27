#pragma once

#include "spg/schedule.hpp"
#include "spg/trajectory.hpp"

namespace spg {

// Forward marginal: sqrt(alpha_bar_t) * x0 + sqrt(1 - alpha_bar_t) * eps.
Trajectory q_sample(const Trajectory& x0, int t, const Trajectory& eps, const NoiseSchedule& schedule);

struct PosteriorCoeffs {
    double on_x0_hat = 0.0;  // sqrt(alpha_bar_{t-1}) * beta_t / (1 - alpha_bar_t)
    double on_x_t = 0.0;     // sqrt(alpha_t) * (1 - alpha_bar_{t-1}) / (1 - alpha_bar_t)
};

PosteriorCoeffs posterior_coeffs(int t, const NoiseSchedule& schedule);

// Reverse-process mean given the clean prediction x0_hat.
Trajectory posterior_mean(const Trajectory& x_t, const Trajectory& x0_hat, int t, const NoiseSchedule& schedule);

// The noise implied by a state/prediction pair:
// (x_t - sqrt(alpha_bar_t) * x0_hat) / sqrt(1 - alpha_bar_t).
Trajectory implied_eps(const Trajectory& x_t, const Trajectory& x0_hat, int t, const NoiseSchedule& schedule);

}  // namespace spg
