#include "spg/diffusion.hpp"

#include <cmath>
#include <stdexcept>

namespace spg {

Trajectory q_sample(const Trajectory& x0, int t, const Trajectory& eps, const NoiseSchedule& schedule) {
    require_same_shape(x0, eps, "q_sample");
    schedule.require_step(t);
    return lincomb(std::sqrt(schedule.alpha_bar[t]), x0, std::sqrt(schedule.one_minus_alpha_bar[t]), eps);
}

PosteriorCoeffs posterior_coeffs(int t, const NoiseSchedule& schedule) {
    schedule.require_step(t);
    double denom = schedule.one_minus_alpha_bar[t];
    PosteriorCoeffs c;
    c.on_x0_hat = std::sqrt(schedule.alpha_bar[t - 1]) * schedule.beta[t] / denom;
    c.on_x_t = std::sqrt(schedule.alpha[t]) * schedule.one_minus_alpha_bar[t - 1] / denom;
    return c;
}

Trajectory posterior_mean(const Trajectory& x_t, const Trajectory& x0_hat, int t, const NoiseSchedule& schedule) {
    require_same_shape(x_t, x0_hat, "posterior_mean");
    PosteriorCoeffs c = posterior_coeffs(t, schedule);
    return lincomb(c.on_x0_hat, x0_hat, c.on_x_t, x_t);
}

Trajectory implied_eps(const Trajectory& x_t, const Trajectory& x0_hat, int t, const NoiseSchedule& schedule) {
    require_same_shape(x_t, x0_hat, "implied_eps");
    schedule.require_step(t);
    double om = schedule.one_minus_alpha_bar[t];
    if (!(om > 0.0)) throw std::domain_error("implied_eps: alpha_bar[t] must be < 1");
    double inv = 1.0 / std::sqrt(om);
    return lincomb(inv, x_t, -std::sqrt(schedule.alpha_bar[t]) * inv, x0_hat);
}

}  // namespace spg
