#pragma once

#include <cstdint>
#include <vector>

#include "spg/toy_dataset.hpp"
#include "spg/trajectory.hpp"

namespace spg {

// Hand-crafted trajectory features: per channel (mean, std, mean |velocity|,
// mean |acceleration|, low-band amplitude, high-band amplitude), with the
// band split at split_freq cycles/frame. Velocity and acceleration are
// finite differences scaled by the frame rate; band amplitudes are
// root-sum-square DFT amplitudes excluding DC.
class FeatureExtractor {
public:
    explicit FeatureExtractor(double split_freq = 0.125);
    static FeatureExtractor for_spec(const SyntheticMotionSpec& spec);

    int dim(int channels) const { return 6 * channels; }
    double split_freq() const { return split_freq_; }

    std::vector<double> operator()(const Trajectory& x) const;

private:
    double split_freq_;
};

// Gaussian summary of a feature set: mean and (sample) covariance.
struct FeatureStats {
    std::vector<double> mean;
    std::vector<double> cov;  // dim x dim, row-major, symmetric
    long n = 0;

    int dim() const { return int(mean.size()); }

    static FeatureStats from_features(const std::vector<std::vector<double>>& features);
};

// Frechet distance between the two Gaussians:
// |mu_a - mu_b|^2 + tr(Ca + Cb - 2 (Ca Cb)^{1/2}), with the matrix square
// root taken through the symmetric form Ca^{1/2} Cb Ca^{1/2}.
double frechet_distance(const FeatureStats& a, const FeatureStats& b);

// Mean feature distance over `pairs` distinct index pairs sampled without
// replacement (all pairs when `pairs` >= C(n,2)). Deterministic per seed.
double diversity(const std::vector<Trajectory>& items, int pairs, std::uint64_t seed,
                 const FeatureExtractor& extractor);

inline constexpr int kDefaultDiversityPairs = 300;

struct AccelProfile {
    std::vector<double> mean_speed;  // per channel
    std::vector<double> mean_accel;
    double overall_speed = 0.0;
    double overall_accel = 0.0;
};

AccelProfile accel_profile(const std::vector<Trajectory>& items);

// Fraction classified to their own label by nearest class template in
// feature space.
double condition_accuracy(const std::vector<LabeledTrajectory>& items, const SyntheticMotionSpec& spec,
                          const FeatureExtractor& extractor);

}  // namespace spg
