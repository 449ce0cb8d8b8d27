#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spg/denoiser.hpp"
#include "spg/rng.hpp"
#include "spg/schedule.hpp"
#include "spg/trajectory.hpp"

namespace spg {

enum class GuidanceMethod { None, Cfg, Spg, SagDet, Icg, Sg };

const char* guidance_method_name(GuidanceMethod m);

// One guidance term: the method that builds the weak prediction plus its
// scale s. Extra parameters apply only where relevant (k for SPG/SAG-det,
// delta_t for SG, icg_sigma for ICG). both_axes switches SPG/SAG-det to the
// smoothing-axis ablation (temporal + spatial passes).
struct GuidanceSpec {
    GuidanceMethod method = GuidanceMethod::None;
    double s = 0.0;
    int k = 0;
    int delta_t = 0;
    double icg_sigma = 1.0;
    bool both_axes = false;

    static GuidanceSpec cfg(double s);
    static GuidanceSpec spg(double s, int k, bool both_axes = false);
    static GuidanceSpec sag_det(double s, int k, bool both_axes = false);
    static GuidanceSpec icg(double s, double sigma = 1.0);
    static GuidanceSpec sg(double s, int delta_t);

    // Denoiser evaluations this entry adds per sampling step, on top of the
    // shared strong evaluation.
    int extra_calls_per_step() const;

    std::string to_token() const;
};

// Ordered list of guidance terms applied on top of the shared conditional
// prediction. At most one CFG entry is allowed.
struct GuidanceStack {
    std::vector<GuidanceSpec> entries;

    // Alternate composition mode: SPG/SAG smoothing starts from the running
    // combined prediction instead of the conditional one. Off by default and
    // excluded from the acceptance suite.
    bool smooth_combined = false;

    // Grammar: method(:param)*, '+'-separated, e.g. "cfg:1.5 + spg:0.3:5".
    // Tokens: none | cfg:S | spg:S:K | spg2d:S:K | sag:S:K | sag2d:S:K |
    // icg:S[:SIGMA] | sg:S:DT.
    static GuidanceStack parse(std::string_view text);
    std::string to_string() const;

    int calls_per_step() const;
    void validate() const;
    bool empty() const { return entries.empty(); }
};

// Defaults reported for the method and its competitors.
inline constexpr double kDefaultCfgScale = 1.5;   // our convention; +1 gives the MDM-style scale
inline constexpr double kDefaultSpgScale = 0.3;
inline constexpr int kDefaultSpgKernel = 5;
inline constexpr double kDefaultSgScale = 0.7;
inline constexpr int kDefaultSgShift = 20;
inline constexpr double kDefaultIcgSigma = 1.0;

// (1 + s) * strong - s * weak.
Trajectory combine(const Trajectory& strong, const Trajectory& weak, double s);

// Core of SPG / SAG-det with the perturbation noise injected explicitly:
// re-noise the smoothed prediction to level t and re-denoise it.
Trajectory smoothed_renoise_weak(const Denoiser& g, const Trajectory& x0_strong, int t, const Condition& c, int k,
                                 const NoiseSchedule& schedule, const Trajectory& eps, bool both_axes = false);

// Weak prediction from temporally smoothed, freshly re-noised input.
Trajectory spg_weak(const Denoiser& g, const Trajectory& x_t, int t, const Condition& c, int k,
                    const NoiseSchedule& schedule, Rng& perturb, bool both_axes = false);

// As spg_weak but with the deterministic noise implied by (x_t, x0_hat).
Trajectory sag_det_weak(const Denoiser& g, const Trajectory& x_t, int t, const Condition& c, int k,
                        const NoiseSchedule& schedule, bool both_axes = false);

// (conditional, null-conditioned) prediction pair.
std::pair<Trajectory, Trajectory> cfg_pair(const Denoiser& g, const Trajectory& x_t, int t, const Condition& c);

// Weak prediction from a gaussian-perturbed condition embedding.
Trajectory icg_weak(const Denoiser& g, const Trajectory& x_t, int t, const Condition& c, double sigma, Rng& perturb);

// Weak prediction from a shifted (noisier) timestep, clamped at T.
Trajectory sg_weak(const Denoiser& g, const Trajectory& x_t, int t, const Condition& c, int delta_t,
                   const NoiseSchedule& schedule);

// Full guided prediction:
//   x0 = g(x_t, c) + sum_i s_i * (g(x_t, c) - weak_i)
// with the strong term evaluated once and shared. When call_count is given
// it receives the number of denoiser evaluations performed.
Trajectory apply_stack(const Denoiser& g, const GuidanceStack& stack, const Trajectory& x_t, int t, const Condition& c,
                       const NoiseSchedule& schedule, Rng& perturb, long* call_count = nullptr);

}  // namespace spg
