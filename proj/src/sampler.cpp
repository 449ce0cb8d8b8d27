#include "spg/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "spg/diffusion.hpp"

namespace spg {

std::pair<Trajectory, SampleDiagnostics> ddpm_sample(const Denoiser& g, const NoiseSchedule& schedule,
                                                     const GuidanceStack& stack, const Condition& c, ChainRng& rng,
                                                     const SamplerOptions& options) {
    stack.validate();
    auto start = std::chrono::steady_clock::now();

    SampleDiagnostics diag;
    diag.eps_norm.reserve(std::size_t(schedule.T));

    Trajectory x = gaussian_trajectory(g.channels(), g.frames(), g.frame_rate(), rng.ancestral);
    for (int t = schedule.T; t >= 1; --t) {
        Trajectory x0 = apply_stack(g, stack, x, t, c, schedule, rng.perturb, &diag.denoiser_calls);
        if (options.clamp_limit > 0.0) {
            for (double& v : x0.data()) v = std::clamp(v, -options.clamp_limit, options.clamp_limit);
        }
        diag.eps_norm.push_back(l2_norm(implied_eps(x, x0, t, schedule)));

        Trajectory next = posterior_mean(x, x0, t, schedule);
        if (t > 1) {
            double sigma = std::sqrt(schedule.posterior_var[t]);
            Trajectory z = gaussian_like(x, rng.ancestral);
            next += sigma * std::move(z);
        }
        if (!next.all_finite()) {
            throw std::runtime_error("ddpm_sample: non-finite state at t=" + std::to_string(t) +
                                     " (|x0|max=" + std::to_string(max_abs(x0)) + ")");
        }
        x = std::move(next);
    }

    diag.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {std::move(x), std::move(diag)};
}

std::vector<ChainResult> batch_sample(const Denoiser& g, const NoiseSchedule& schedule, const GuidanceStack& stack,
                                      const std::vector<Condition>& conditions, std::uint64_t base_seed, int threads,
                                      const SamplerOptions& options) {
    if (conditions.empty()) throw std::invalid_argument("batch_sample: empty condition list");

    std::vector<ChainResult> results(conditions.size());
    auto run_chain = [&](std::size_t i) {
        try {
            ChainRng rng = ChainRng::for_chain(base_seed, i);
            auto [traj, diag] = ddpm_sample(g, schedule, stack, conditions[i], rng, options);
            results[i].trajectory = std::move(traj);
            results[i].diagnostics = std::move(diag);
        } catch (const std::exception& e) {
            results[i].error = e.what();
        }
    };

    int workers = std::max(1, threads);
    if (workers == 1 || conditions.size() == 1) {
        for (std::size_t i = 0; i < conditions.size(); ++i) run_chain(i);
        return results;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= conditions.size()) break;
            run_chain(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return results;
}

}  // namespace spg
