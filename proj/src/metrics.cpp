#include "spg/metrics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "spg/rng.hpp"

namespace spg {

FeatureExtractor::FeatureExtractor(double split_freq) : split_freq_(split_freq) {
    if (!(split_freq > 0.0 && split_freq < 0.5))
        throw std::invalid_argument("FeatureExtractor: split frequency must lie in (0, 0.5)");
}

FeatureExtractor FeatureExtractor::for_spec(const SyntheticMotionSpec& spec) {
    return FeatureExtractor(std::sqrt(spec.base_freq_max * spec.detail_freq_min));
}

std::vector<double> FeatureExtractor::operator()(const Trajectory& x) const {
    const int n = x.frames();
    if (n < 3) throw std::invalid_argument("featurize: need at least 3 frames");
    const double fr = x.frame_rate();
    std::vector<double> out;
    out.reserve(std::size_t(dim(x.channels())));

    for (int j = 0; j < x.channels(); ++j) {
        auto ch = x.channel(j);

        double mean = 0.0;
        for (double v : ch) mean += v;
        mean /= double(n);

        double var = 0.0;
        for (double v : ch) var += (v - mean) * (v - mean);
        var /= double(n);

        double vel = 0.0;
        for (int i = 0; i + 1 < n; ++i) vel += std::fabs(ch[i + 1] - ch[i]);
        vel = vel / double(n - 1) * fr;

        double acc = 0.0;
        for (int i = 1; i + 1 < n; ++i) acc += std::fabs(ch[i + 1] - 2.0 * ch[i] + ch[i - 1]);
        acc = acc / double(n - 2) * fr * fr;

        // Direct DFT; N is small. Bin f has frequency f/n cycles per frame.
        double low = 0.0, high = 0.0;
        for (int f = 1; f <= n / 2; ++f) {
            double re = 0.0, im = 0.0;
            double w = 2.0 * std::numbers::pi * double(f) / double(n);
            for (int i = 0; i < n; ++i) {
                re += ch[i] * std::cos(w * i);
                im -= ch[i] * std::sin(w * i);
            }
            double scale = (2 * f == n) ? 1.0 / double(n) : 2.0 / double(n);
            double amp = scale * std::sqrt(re * re + im * im);
            if (double(f) / double(n) <= split_freq_)
                low += amp * amp;
            else
                high += amp * amp;
        }

        out.push_back(mean);
        out.push_back(std::sqrt(var));
        out.push_back(vel);
        out.push_back(acc);
        out.push_back(std::sqrt(low));
        out.push_back(std::sqrt(high));
    }
    return out;
}

FeatureStats FeatureStats::from_features(const std::vector<std::vector<double>>& features) {
    if (features.empty()) throw std::invalid_argument("FeatureStats: empty feature set");
    const std::size_t d = features[0].size();
    FeatureStats stats;
    stats.n = long(features.size());
    stats.mean.assign(d, 0.0);
    stats.cov.assign(d * d, 0.0);

    for (const auto& f : features) {
        if (f.size() != d) throw std::invalid_argument("FeatureStats: inconsistent feature dimensions");
        for (std::size_t i = 0; i < d; ++i) stats.mean[i] += f[i];
    }
    for (double& m : stats.mean) m /= double(stats.n);

    if (stats.n > 1) {
        for (const auto& f : features) {
            for (std::size_t i = 0; i < d; ++i) {
                double di = f[i] - stats.mean[i];
                for (std::size_t j = i; j < d; ++j) stats.cov[i * d + j] += di * (f[j] - stats.mean[j]);
            }
        }
        double inv = 1.0 / double(stats.n - 1);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i; j < d; ++j) {
                stats.cov[i * d + j] *= inv;
                stats.cov[j * d + i] = stats.cov[i * d + j];
            }
    }
    return stats;
}

namespace {

Eigen::MatrixXd to_matrix(const std::vector<double>& cov, int d) {
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = cov[std::size_t(i) * d + j];
    // Guard against asymmetric input; the eigensolver assumes symmetry.
    return 0.5 * (m + m.transpose());
}

constexpr double kPsdTolerance = 1e-10;

Eigen::VectorXd clipped_eigenvalues(const Eigen::VectorXd& values, const char* where) {
    Eigen::VectorXd out = values;
    for (int i = 0; i < out.size(); ++i) {
        if (out(i) < -kPsdTolerance)
            throw std::invalid_argument(std::string(where) + ": covariance is not PSD (eigenvalue " +
                                        std::to_string(out(i)) + ")");
        if (out(i) < 0.0) out(i) = 0.0;
    }
    return out;
}

}  // namespace

double frechet_distance(const FeatureStats& a, const FeatureStats& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("frechet_distance: dimension mismatch");
    const int d = a.dim();

    double mean_term = 0.0;
    for (int i = 0; i < d; ++i) {
        double diff = a.mean[std::size_t(i)] - b.mean[std::size_t(i)];
        mean_term += diff * diff;
    }

    Eigen::MatrixXd ca = to_matrix(a.cov, d);
    Eigen::MatrixXd cb = to_matrix(b.cov, d);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_a(ca);
    if (es_a.info() != Eigen::Success) throw std::runtime_error("frechet_distance: eigendecomposition failed");
    Eigen::VectorXd va = clipped_eigenvalues(es_a.eigenvalues(), "frechet_distance");
    Eigen::MatrixXd sqrt_a =
        es_a.eigenvectors() * va.cwiseSqrt().asDiagonal() * es_a.eigenvectors().transpose();

    Eigen::MatrixXd inner = sqrt_a * cb * sqrt_a;
    inner = 0.5 * (inner + inner.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_m(inner);
    if (es_m.info() != Eigen::Success) throw std::runtime_error("frechet_distance: eigendecomposition failed");
    Eigen::VectorXd vm = clipped_eigenvalues(es_m.eigenvalues(), "frechet_distance");

    double trace_sqrt = vm.cwiseSqrt().sum();
    double value = mean_term + ca.trace() + cb.trace() - 2.0 * trace_sqrt;
    return value > 0.0 ? value : 0.0;
}

double diversity(const std::vector<Trajectory>& items, int pairs, std::uint64_t seed,
                 const FeatureExtractor& extractor) {
    const std::size_t n = items.size();
    if (n < 2) throw std::invalid_argument("diversity: need at least 2 items");
    if (pairs < 1) throw std::invalid_argument("diversity: need at least 1 pair");

    std::vector<std::vector<double>> features;
    features.reserve(n);
    for (const auto& item : items) features.push_back(extractor(item));

    // Sample distinct unordered pairs without replacement: partial
    // Fisher-Yates over the enumerated pair universe.
    std::size_t total = n * (n - 1) / 2;
    std::size_t take = std::min<std::size_t>(std::size_t(pairs), total);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> universe;
    universe.reserve(total);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) universe.emplace_back(i, j);

    Rng rng(derive_seed(seed, 0x44495645));
    double acc = 0.0;
    for (std::size_t p = 0; p < take; ++p) {
        std::size_t pick = p + std::size_t(rng.below(universe.size() - p));
        std::swap(universe[p], universe[pick]);
        const auto& fa = features[universe[p].first];
        const auto& fb = features[universe[p].second];
        double dist = 0.0;
        for (std::size_t i = 0; i < fa.size(); ++i) dist += (fa[i] - fb[i]) * (fa[i] - fb[i]);
        acc += std::sqrt(dist);
    }
    return acc / double(take);
}

AccelProfile accel_profile(const std::vector<Trajectory>& items) {
    if (items.empty()) throw std::invalid_argument("accel_profile: empty set");
    const int channels = items[0].channels();
    const int n = items[0].frames();
    if (n < 3) throw std::invalid_argument("accel_profile: need at least 3 frames");

    AccelProfile profile;
    profile.mean_speed.assign(std::size_t(channels), 0.0);
    profile.mean_accel.assign(std::size_t(channels), 0.0);

    for (const auto& item : items) {
        if (item.channels() != channels || item.frames() != n)
            throw std::invalid_argument("accel_profile: inconsistent shapes");
        const double fr = item.frame_rate();
        for (int j = 0; j < channels; ++j) {
            auto ch = item.channel(j);
            double speed = 0.0;
            for (int i = 0; i + 1 < n; ++i) speed += std::fabs(ch[i + 1] - ch[i]);
            profile.mean_speed[std::size_t(j)] += speed / double(n - 1) * fr;
            double accel = 0.0;
            for (int i = 1; i + 1 < n; ++i) accel += std::fabs(ch[i + 1] - 2.0 * ch[i] + ch[i - 1]);
            profile.mean_accel[std::size_t(j)] += accel / double(n - 2) * fr * fr;
        }
    }
    for (int j = 0; j < channels; ++j) {
        profile.mean_speed[std::size_t(j)] /= double(items.size());
        profile.mean_accel[std::size_t(j)] /= double(items.size());
        profile.overall_speed += profile.mean_speed[std::size_t(j)];
        profile.overall_accel += profile.mean_accel[std::size_t(j)];
    }
    profile.overall_speed /= double(channels);
    profile.overall_accel /= double(channels);
    return profile;
}

double condition_accuracy(const std::vector<LabeledTrajectory>& items, const SyntheticMotionSpec& spec,
                          const FeatureExtractor& extractor) {
    if (items.empty()) throw std::invalid_argument("condition_accuracy: empty set");
    std::vector<std::vector<double>> templates;
    templates.reserve(std::size_t(spec.num_classes));
    for (int c = 0; c < spec.num_classes; ++c) templates.push_back(extractor(spec.class_template(c)));

    long correct = 0;
    for (const auto& item : items) {
        if (item.label < 0 || item.label >= spec.num_classes)
            throw std::invalid_argument("condition_accuracy: unknown label " + std::to_string(item.label));
        auto f = extractor(item.trajectory);
        int best = 0;
        double best_dist = std::numeric_limits<double>::infinity();
        for (int c = 0; c < spec.num_classes; ++c) {
            double dist = 0.0;
            for (std::size_t i = 0; i < f.size(); ++i) {
                double diff = f[i] - templates[std::size_t(c)][i];
                dist += diff * diff;
            }
            if (dist < best_dist) {
                best_dist = dist;
                best = c;
            }
        }
        if (best == item.label) ++correct;
    }
    return double(correct) / double(items.size());
}

}  // namespace spg
