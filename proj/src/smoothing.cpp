#include "spg/smoothing.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace spg {

SmoothingKernel SmoothingKernel::moving_average(int k) {
    if (k < 1 || k % 2 == 0) throw std::invalid_argument("SmoothingKernel: window must be odd and positive");
    SmoothingKernel kernel;
    kernel.k = k;
    kernel.weights.assign(std::size_t(k), 1.0 / double(k));
    return kernel;
}

namespace {

void check_window(int k, int extent, const char* axis) {
    if (k < 1 || k % 2 == 0)
        throw std::invalid_argument(std::string(axis) + " smoothing: window must be odd and positive, got " +
                                    std::to_string(k));
    if (k > extent)
        throw std::invalid_argument(std::string(axis) + " smoothing: window " + std::to_string(k) +
                                    " exceeds extent " + std::to_string(extent));
}

}  // namespace

Trajectory temporal_smooth(const Trajectory& x, int k) {
    check_window(k, x.frames(), "temporal");
    if (k == 1) return x;
    const int n = x.frames();
    const int half = k / 2;
    const double inv_k = 1.0 / double(k);
    Trajectory out(x.channels(), n, x.frame_rate());
    for (int j = 0; j < x.channels(); ++j) {
        auto src = x.channel(j);
        auto dst = out.channel(j);
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int d = -half; d <= half; ++d) {
                int idx = std::clamp(i + d, 0, n - 1);
                acc += src[idx];
            }
            dst[i] = acc * inv_k;
        }
    }
    return out;
}

Trajectory spatial_smooth(const Trajectory& x, int k) {
    check_window(k, x.channels(), "spatial");
    if (k == 1) return x;
    const int rows = x.channels();
    const int half = k / 2;
    const double inv_k = 1.0 / double(k);
    Trajectory out(rows, x.frames(), x.frame_rate());
    for (int i = 0; i < x.frames(); ++i) {
        for (int j = 0; j < rows; ++j) {
            double acc = 0.0;
            for (int d = -half; d <= half; ++d) {
                int idx = std::clamp(j + d, 0, rows - 1);
                acc += x.at(idx, i);
            }
            out.at(j, i) = acc * inv_k;
        }
    }
    return out;
}

Trajectory smooth_both_axes(const Trajectory& x, int k) {
    Trajectory out = temporal_smooth(x, k);
    int ks = std::min(k, x.channels());
    if (ks % 2 == 0) --ks;
    return spatial_smooth(out, ks);
}

}  // namespace spg
