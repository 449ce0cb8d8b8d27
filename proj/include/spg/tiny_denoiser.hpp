#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spg/denoiser.hpp"
#include "spg/schedule.hpp"
#include "spg/toy_dataset.hpp"

namespace spg {

// Small feed-forward x0-predictor: flattened x_t, a sinusoidal embedding of
// t, and a learned condition embedding (one row per class plus a dedicated
// null row) pass through two tanh layers to the flattened prediction.
// Parameters live in one flat vector so the optimizer, the checkpoint format
// and finite-difference checks all see the same layout.
class TinyDenoiser final : public Denoiser {
public:
    struct Config {
        int channels = 3;
        int frames = 48;
        int num_classes = 3;
        int schedule_steps = 50;
        int width = 96;
        int time_dim = 16;
        int cond_dim = 8;
        double frame_rate = 20.0;
    };

    TinyDenoiser(const Config& config, std::uint64_t init_seed);

    Trajectory predict_x0(const Trajectory& x_t, int t, const Condition& c) const override;
    int channels() const override { return config_.channels; }
    int frames() const override { return config_.frames; }
    double frame_rate() const override { return config_.frame_rate; }
    std::vector<double> condition_embedding(const Condition& c) const override;

    const Config& config() const { return config_; }
    int schedule_steps() const { return config_.schedule_steps; }

    std::vector<double>& parameters() { return params_; }
    const std::vector<double>& parameters() const { return params_; }

    void save(const std::string& path) const;
    static TinyDenoiser load(const std::string& path);

    // Mean over examples of the squared-error loss |g(x_t,t,c) - target|^2,
    // with the analytic gradient accumulated into *grad when non-null.
    struct Example {
        Trajectory x_t;
        int t = 1;
        Condition c = Condition::null();
        Trajectory target;
    };
    double loss_and_gradient(std::span<const Example> batch, std::vector<double>* grad) const;

private:
    struct Layout {
        std::size_t w1 = 0, b1 = 0, w2 = 0, b2 = 0, w3 = 0, b3 = 0, emb = 0, total = 0;
        int in_dim = 0, out_dim = 0;
    };

    std::vector<double> time_embedding(int t) const;
    std::vector<double> cond_vector(const Condition& c, int* emb_row) const;
    void forward(const std::vector<double>& input, std::vector<double>& h1, std::vector<double>& h2,
                 std::vector<double>& out) const;

    Config config_;
    Layout layout_;
    std::vector<double> params_;
};

struct TrainConfig {
    int steps = 2000;
    int batch_size = 32;
    double learning_rate = 1e-3;
    double momentum = 0.9;
    double dropout_p = 0.1;  // probability of replacing the condition by null
    std::uint64_t seed = 0;
};

struct TrainResult {
    std::vector<double> loss_curve;  // batch loss per step
    long null_draws = 0;
    long cond_draws = 0;
};

// SGD with momentum on the x0-prediction objective
//   E | g(q_sample(x0, t, eps), t, c_or_null) - x0 |^2 .
TrainResult train(TinyDenoiser& model, const std::vector<LabeledTrajectory>& dataset, const NoiseSchedule& schedule,
                  const TrainConfig& config);

}  // namespace spg
