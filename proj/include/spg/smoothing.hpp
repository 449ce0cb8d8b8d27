#pragma once

#include <vector>

#include "spg/trajectory.hpp"

namespace spg {

// Uniform moving-average window of odd width k.
struct SmoothingKernel {
    int k = 1;
    std::vector<double> weights;  // k entries, each 1/k

    static SmoothingKernel moving_average(int k);
};

// Moving average along the time axis, per channel. Boundaries use replicate
// (edge-value) padding; k = 1 is the identity.
Trajectory temporal_smooth(const Trajectory& x, int k);

// Moving average across channels, per frame. Same padding and window rules,
// with k bounded by the channel count.
Trajectory spatial_smooth(const Trajectory& x, int k);

// Separable both-axes smoothing used by the smoothing-axis ablation: a
// temporal pass with k followed by a spatial pass with k clamped to the
// largest odd window not exceeding the channel count.
Trajectory smooth_both_axes(const Trajectory& x, int k);

}  // namespace spg
