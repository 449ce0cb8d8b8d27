#include "spg/tiny_denoiser.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "spg/diffusion.hpp"
#include "spg/io.hpp"
#include "spg/rng.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint container assumes a little-endian host");

namespace spg {

namespace {

constexpr char kModelMagic[5] = {'T', 'D', 'E', 'N', '1'};
constexpr std::uint32_t kModelVersion = 1;

void validate_config(const TinyDenoiser::Config& c) {
    if (c.channels < 1 || c.frames < 1) throw std::invalid_argument("TinyDenoiser: bad trajectory shape");
    if (c.num_classes < 1) throw std::invalid_argument("TinyDenoiser: num_classes must be >= 1");
    if (c.schedule_steps < 2) throw std::invalid_argument("TinyDenoiser: schedule_steps must be >= 2");
    if (c.width < 1) throw std::invalid_argument("TinyDenoiser: width must be >= 1");
    if (c.time_dim < 2 || c.time_dim % 2 != 0) throw std::invalid_argument("TinyDenoiser: time_dim must be even >= 2");
    if (c.cond_dim < 1) throw std::invalid_argument("TinyDenoiser: cond_dim must be >= 1");
}

}  // namespace

TinyDenoiser::TinyDenoiser(const Config& config, std::uint64_t init_seed) : config_(config) {
    validate_config(config);
    layout_.in_dim = config.channels * config.frames + config.time_dim + config.cond_dim;
    layout_.out_dim = config.channels * config.frames;
    std::size_t w = std::size_t(config.width);
    layout_.w1 = 0;
    layout_.b1 = layout_.w1 + w * layout_.in_dim;
    layout_.w2 = layout_.b1 + w;
    layout_.b2 = layout_.w2 + w * w;
    layout_.w3 = layout_.b2 + w;
    layout_.b3 = layout_.w3 + std::size_t(layout_.out_dim) * w;
    layout_.emb = layout_.b3 + std::size_t(layout_.out_dim);
    layout_.total = layout_.emb + std::size_t(config.num_classes + 1) * config.cond_dim;

    params_.assign(layout_.total, 0.0);
    Rng rng(derive_seed(init_seed, 0x54444e49));
    double s1 = 1.0 / std::sqrt(double(layout_.in_dim));
    for (std::size_t i = layout_.w1; i < layout_.b1; ++i) params_[i] = s1 * rng.gaussian();
    double s2 = 1.0 / std::sqrt(double(w));
    for (std::size_t i = layout_.w2; i < layout_.b2; ++i) params_[i] = s2 * rng.gaussian();
    for (std::size_t i = layout_.w3; i < layout_.b3; ++i) params_[i] = s2 * rng.gaussian();
    for (std::size_t i = layout_.emb; i < layout_.total; ++i) params_[i] = rng.gaussian();
}

std::vector<double> TinyDenoiser::time_embedding(int t) const {
    int half = config_.time_dim / 2;
    std::vector<double> emb(std::size_t(config_.time_dim));
    double log_base = std::log(10000.0) / double(half);
    for (int i = 0; i < half; ++i) {
        double angle = double(t) * std::exp(-double(i) * log_base);
        emb[std::size_t(i)] = std::sin(angle);
        emb[std::size_t(half + i)] = std::cos(angle);
    }
    return emb;
}

std::vector<double> TinyDenoiser::cond_vector(const Condition& c, int* emb_row) const {
    if (c.is_embedding()) {
        const auto& values = c.embedding_values();
        if (int(values.size()) != config_.cond_dim)
            throw std::invalid_argument("TinyDenoiser: embedding size mismatch");
        if (emb_row) *emb_row = -1;
        return values;
    }
    int row = config_.num_classes;  // null row
    if (c.is_label()) {
        row = c.label_id();
        if (row < 0 || row >= config_.num_classes)
            throw std::invalid_argument("TinyDenoiser: class label " + std::to_string(row) + " out of range");
    }
    if (emb_row) *emb_row = row;
    const double* base = params_.data() + layout_.emb + std::size_t(row) * config_.cond_dim;
    return std::vector<double>(base, base + config_.cond_dim);
}

void TinyDenoiser::forward(const std::vector<double>& input, std::vector<double>& h1, std::vector<double>& h2,
                           std::vector<double>& out) const {
    const int w = config_.width;
    const int in_dim = layout_.in_dim;
    const int out_dim = layout_.out_dim;
    h1.assign(std::size_t(w), 0.0);
    h2.assign(std::size_t(w), 0.0);
    out.assign(std::size_t(out_dim), 0.0);

    const double* w1 = params_.data() + layout_.w1;
    const double* b1 = params_.data() + layout_.b1;
    for (int r = 0; r < w; ++r) {
        double acc = b1[r];
        const double* row = w1 + std::size_t(r) * in_dim;
        for (int i = 0; i < in_dim; ++i) acc += row[i] * input[std::size_t(i)];
        h1[std::size_t(r)] = std::tanh(acc);
    }
    const double* w2 = params_.data() + layout_.w2;
    const double* b2 = params_.data() + layout_.b2;
    for (int r = 0; r < w; ++r) {
        double acc = b2[r];
        const double* row = w2 + std::size_t(r) * w;
        for (int i = 0; i < w; ++i) acc += row[i] * h1[std::size_t(i)];
        h2[std::size_t(r)] = std::tanh(acc);
    }
    const double* w3 = params_.data() + layout_.w3;
    const double* b3 = params_.data() + layout_.b3;
    for (int r = 0; r < out_dim; ++r) {
        double acc = b3[r];
        const double* row = w3 + std::size_t(r) * w;
        for (int i = 0; i < w; ++i) acc += row[i] * h2[std::size_t(i)];
        out[std::size_t(r)] = acc;
    }
}

Trajectory TinyDenoiser::predict_x0(const Trajectory& x_t, int t, const Condition& c) const {
    if (x_t.channels() != config_.channels || x_t.frames() != config_.frames)
        throw std::invalid_argument("TinyDenoiser: input shape mismatch");
    if (t < 1 || t > config_.schedule_steps)
        throw std::out_of_range("TinyDenoiser: timestep outside [1, " + std::to_string(config_.schedule_steps) + "]");

    std::vector<double> input;
    input.reserve(std::size_t(layout_.in_dim));
    input.insert(input.end(), x_t.data().begin(), x_t.data().end());
    auto temb = time_embedding(t);
    input.insert(input.end(), temb.begin(), temb.end());
    auto cemb = cond_vector(c, nullptr);
    input.insert(input.end(), cemb.begin(), cemb.end());

    std::vector<double> h1, h2, out;
    forward(input, h1, h2, out);

    Trajectory result(config_.channels, config_.frames, x_t.frame_rate());
    result.data() = std::move(out);
    return result;
}

std::vector<double> TinyDenoiser::condition_embedding(const Condition& c) const {
    return cond_vector(c, nullptr);
}

double TinyDenoiser::loss_and_gradient(std::span<const Example> batch, std::vector<double>* grad) const {
    if (batch.empty()) throw std::invalid_argument("loss_and_gradient: empty batch");
    if (grad) grad->assign(layout_.total, 0.0);

    const int w = config_.width;
    const int in_dim = layout_.in_dim;
    const int out_dim = layout_.out_dim;
    const double inv_batch = 1.0 / double(batch.size());

    std::vector<double> input, h1, h2, out;
    std::vector<double> dout(std::size_t(out_dim)), dh2(std::size_t(w)), dz2(std::size_t(w)), dh1(std::size_t(w)),
        dz1(std::size_t(w));

    double loss = 0.0;
    for (const Example& ex : batch) {
        if (ex.x_t.channels() != config_.channels || ex.x_t.frames() != config_.frames)
            throw std::invalid_argument("loss_and_gradient: example shape mismatch");
        require_same_shape(ex.x_t, ex.target, "loss_and_gradient");

        int emb_row = -1;
        input.clear();
        input.insert(input.end(), ex.x_t.data().begin(), ex.x_t.data().end());
        auto temb = time_embedding(ex.t);
        input.insert(input.end(), temb.begin(), temb.end());
        auto cemb = cond_vector(ex.c, &emb_row);
        input.insert(input.end(), cemb.begin(), cemb.end());

        forward(input, h1, h2, out);

        double ex_loss = 0.0;
        for (int i = 0; i < out_dim; ++i) {
            double diff = out[std::size_t(i)] - ex.target.data()[std::size_t(i)];
            ex_loss += diff * diff;
            dout[std::size_t(i)] = 2.0 * diff * inv_batch;
        }
        loss += ex_loss * inv_batch;
        if (!grad) continue;

        double* g = grad->data();
        const double* w3 = params_.data() + layout_.w3;
        for (int r = 0; r < out_dim; ++r) {
            double d = dout[std::size_t(r)];
            double* grow = g + layout_.w3 + std::size_t(r) * w;
            for (int i = 0; i < w; ++i) grow[i] += d * h2[std::size_t(i)];
            g[layout_.b3 + std::size_t(r)] += d;
        }
        for (int i = 0; i < w; ++i) {
            double acc = 0.0;
            for (int r = 0; r < out_dim; ++r) acc += w3[std::size_t(r) * w + i] * dout[std::size_t(r)];
            dh2[std::size_t(i)] = acc;
            dz2[std::size_t(i)] = acc * (1.0 - h2[std::size_t(i)] * h2[std::size_t(i)]);
        }
        const double* w2 = params_.data() + layout_.w2;
        for (int r = 0; r < w; ++r) {
            double d = dz2[std::size_t(r)];
            double* grow = g + layout_.w2 + std::size_t(r) * w;
            for (int i = 0; i < w; ++i) grow[i] += d * h1[std::size_t(i)];
            g[layout_.b2 + std::size_t(r)] += d;
        }
        for (int i = 0; i < w; ++i) {
            double acc = 0.0;
            for (int r = 0; r < w; ++r) acc += w2[std::size_t(r) * w + i] * dz2[std::size_t(r)];
            dh1[std::size_t(i)] = acc;
            dz1[std::size_t(i)] = acc * (1.0 - h1[std::size_t(i)] * h1[std::size_t(i)]);
        }
        const double* w1 = params_.data() + layout_.w1;
        for (int r = 0; r < w; ++r) {
            double d = dz1[std::size_t(r)];
            double* grow = g + layout_.w1 + std::size_t(r) * in_dim;
            for (int i = 0; i < in_dim; ++i) grow[i] += d * input[std::size_t(i)];
            g[layout_.b1 + std::size_t(r)] += d;
        }
        if (emb_row >= 0) {
            // d(input) restricted to the condition slice feeds the embedding row.
            std::size_t cond_offset = std::size_t(out_dim + config_.time_dim);
            double* gemb = g + layout_.emb + std::size_t(emb_row) * config_.cond_dim;
            for (int i = 0; i < config_.cond_dim; ++i) {
                double acc = 0.0;
                for (int r = 0; r < w; ++r)
                    acc += w1[std::size_t(r) * in_dim + cond_offset + std::size_t(i)] * dz1[std::size_t(r)];
                gemb[i] += acc;
            }
        }
    }
    return loss;
}

namespace {

template <typename T>
void append_raw(std::vector<unsigned char>& out, T value) {
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    out.insert(out.end(), buf, buf + sizeof(T));
}

template <typename T>
T read_raw(const std::vector<unsigned char>& bytes, std::size_t& offset) {
    if (offset + sizeof(T) > bytes.size()) throw std::runtime_error("model checkpoint: truncated");
    T value;
    std::memcpy(&value, bytes.data() + offset, sizeof(T));
    offset += sizeof(T);
    return value;
}

}  // namespace

void TinyDenoiser::save(const std::string& path) const {
    std::vector<unsigned char> bytes;
    bytes.reserve(64 + params_.size() * 8);
    bytes.insert(bytes.end(), kModelMagic, kModelMagic + 5);
    append_raw<std::uint32_t>(bytes, kModelVersion);
    append_raw<std::uint32_t>(bytes, std::uint32_t(config_.channels));
    append_raw<std::uint32_t>(bytes, std::uint32_t(config_.frames));
    append_raw<std::uint32_t>(bytes, std::uint32_t(config_.num_classes));
    append_raw<std::uint32_t>(bytes, std::uint32_t(config_.schedule_steps));
    append_raw<std::uint32_t>(bytes, std::uint32_t(config_.width));
    append_raw<std::uint32_t>(bytes, std::uint32_t(config_.time_dim));
    append_raw<std::uint32_t>(bytes, std::uint32_t(config_.cond_dim));
    append_raw<double>(bytes, config_.frame_rate);
    append_raw<std::uint64_t>(bytes, std::uint64_t(params_.size()));
    for (double p : params_) append_raw<double>(bytes, p);
    write_file_atomic(path, bytes.data(), bytes.size());
}

TinyDenoiser TinyDenoiser::load(const std::string& path) {
    auto bytes = read_binary_file(path);
    if (bytes.size() < 5 || std::memcmp(bytes.data(), kModelMagic, 5) != 0)
        throw std::runtime_error("model checkpoint: bad magic in " + path);
    std::size_t offset = 5;
    auto version = read_raw<std::uint32_t>(bytes, offset);
    if (version != kModelVersion)
        throw std::runtime_error("model checkpoint: unsupported version " + std::to_string(version));
    Config config;
    config.channels = int(read_raw<std::uint32_t>(bytes, offset));
    config.frames = int(read_raw<std::uint32_t>(bytes, offset));
    config.num_classes = int(read_raw<std::uint32_t>(bytes, offset));
    config.schedule_steps = int(read_raw<std::uint32_t>(bytes, offset));
    config.width = int(read_raw<std::uint32_t>(bytes, offset));
    config.time_dim = int(read_raw<std::uint32_t>(bytes, offset));
    config.cond_dim = int(read_raw<std::uint32_t>(bytes, offset));
    config.frame_rate = read_raw<double>(bytes, offset);
    auto count = read_raw<std::uint64_t>(bytes, offset);

    TinyDenoiser model(config, 0);
    if (count != model.params_.size()) throw std::runtime_error("model checkpoint: parameter count mismatch");
    for (std::size_t i = 0; i < count; ++i) model.params_[i] = read_raw<double>(bytes, offset);
    if (offset != bytes.size()) throw std::runtime_error("model checkpoint: trailing data");
    return model;
}

TrainResult train(TinyDenoiser& model, const std::vector<LabeledTrajectory>& dataset, const NoiseSchedule& schedule,
                  const TrainConfig& config) {
    if (dataset.empty()) throw std::invalid_argument("train: empty dataset");
    if (config.steps < 0 || config.batch_size < 1) throw std::invalid_argument("train: bad steps/batch size");
    if (config.dropout_p < 0.0 || config.dropout_p >= 1.0) throw std::invalid_argument("train: dropout_p in [0,1)");

    Rng rng(derive_seed(config.seed, 0x5452414e));
    TrainResult result;
    result.loss_curve.reserve(std::size_t(config.steps));

    std::vector<double> grad;
    std::vector<double> velocity(model.parameters().size(), 0.0);
    std::vector<TinyDenoiser::Example> batch(std::size_t(config.batch_size));

    for (int step = 0; step < config.steps; ++step) {
        for (int b = 0; b < config.batch_size; ++b) {
            const auto& item = dataset[std::size_t(rng.below(dataset.size()))];
            bool drop = rng.uniform() < config.dropout_p;
            ++result.cond_draws;
            if (drop) ++result.null_draws;
            int t = 1 + int(rng.below(std::uint64_t(schedule.T)));
            Trajectory eps = gaussian_like(item.trajectory, rng);
            TinyDenoiser::Example& ex = batch[std::size_t(b)];
            ex.x_t = q_sample(item.trajectory, t, eps, schedule);
            ex.t = t;
            ex.c = drop ? Condition::null() : Condition::label(item.label);
            ex.target = item.trajectory;
        }
        double loss = model.loss_and_gradient(batch, &grad);
        if (!std::isfinite(loss))
            throw std::runtime_error("train: loss diverged (non-finite) at step " + std::to_string(step));
        result.loss_curve.push_back(loss);

        auto& params = model.parameters();
        for (std::size_t i = 0; i < params.size(); ++i) {
            velocity[i] = config.momentum * velocity[i] - config.learning_rate * grad[i];
            params[i] += velocity[i];
        }
    }
    return result;
}

}  // namespace spg
