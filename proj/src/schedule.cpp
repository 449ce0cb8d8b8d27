#include "spg/schedule.hpp"

#include <stdexcept>
#include <string>

namespace spg {

void NoiseSchedule::require_step(int t) const {
    if (!valid_step(t))
        throw std::out_of_range("timestep " + std::to_string(t) + " outside schedule range [1, " + std::to_string(T) +
                                "]");
}

NoiseSchedule make_schedule_from_betas(const std::vector<double>& betas) {
    if (betas.size() < 2) throw std::invalid_argument("schedule needs at least 2 steps");
    for (double b : betas)
        if (!(b > 0.0 && b < 1.0)) throw std::invalid_argument("beta values must lie in (0, 1)");

    NoiseSchedule s;
    s.T = int(betas.size());
    s.beta.assign(s.T + 1, 0.0);
    s.alpha.assign(s.T + 1, 1.0);
    s.alpha_bar.assign(s.T + 1, 1.0);
    s.one_minus_alpha_bar.assign(s.T + 1, 0.0);
    s.posterior_var.assign(s.T + 1, 0.0);
    for (int t = 1; t <= s.T; ++t) {
        s.beta[t] = betas[t - 1];
        s.alpha[t] = 1.0 - s.beta[t];
        s.alpha_bar[t] = s.alpha_bar[t - 1] * s.alpha[t];
        s.one_minus_alpha_bar[t] = s.one_minus_alpha_bar[t - 1] + s.alpha_bar[t - 1] * s.beta[t];
        s.posterior_var[t] = s.one_minus_alpha_bar[t - 1] * s.beta[t] / s.one_minus_alpha_bar[t];
    }
    return s;
}

NoiseSchedule make_linear_schedule(int T, double beta_start, double beta_end) {
    if (T < 2) throw std::invalid_argument("make_linear_schedule: T must be >= 2");
    if (!(beta_start > 0.0) || !(beta_start <= beta_end) || !(beta_end < 1.0))
        throw std::invalid_argument("make_linear_schedule: need 0 < beta_start <= beta_end < 1");
    std::vector<double> betas(T);
    for (int t = 1; t <= T; ++t) betas[t - 1] = beta_start + (beta_end - beta_start) * double(t - 1) / double(T - 1);
    return make_schedule_from_betas(betas);
}

}  // namespace spg
