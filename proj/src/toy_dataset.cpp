#include "spg/toy_dataset.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "spg/run_config.hpp"

namespace spg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Per-channel amplitude pattern, rotated by class so classes are separable
// from channel statistics alone.
double channel_scale(int label, int channel, int channels) {
    if (channels == 1) return 1.0;
    int slot = (channel + label) % channels;
    return 0.55 + 0.45 * double(slot) / double(channels - 1);
}

double band_freq(double fmin, double fmax, int slot, int slots) {
    if (slots <= 1) return fmin;
    return fmin + (fmax - fmin) * double(slot) / double(slots - 1);
}

}  // namespace

void SyntheticMotionSpec::validate() const {
    if (num_classes < 1) throw std::invalid_argument("spec: num_classes must be >= 1");
    if (channels < 1 || frames < 1) throw std::invalid_argument("spec: channels and frames must be >= 1");
    if (base_count < 1) throw std::invalid_argument("spec: base_count must be >= 1");
    if (detail_count < 0) throw std::invalid_argument("spec: detail_count must be >= 0");
    if (!(base_freq_min > 0.0 && base_freq_min <= base_freq_max))
        throw std::invalid_argument("spec: base frequency band invalid");
    if (!(base_freq_max < 1.0 / (2.0 * kKernelMax)))
        throw std::invalid_argument("spec: base frequencies must stay below 1/(2*k_max)");
    if (detail_count > 0) {
        if (!(detail_freq_min <= detail_freq_max && detail_freq_max <= 0.5))
            throw std::invalid_argument("spec: detail frequency band invalid");
        if (!(detail_freq_min > 1.0 / kKernelMin))
            throw std::invalid_argument("spec: detail frequencies must exceed 1/k_min");
        if (!(detail_freq_min / base_freq_max >= 4.0))
            throw std::invalid_argument("spec: bands must be separated by at least a factor of 4");
    }
    if (amp_jitter < 0.0 || amp_jitter >= 1.0) throw std::invalid_argument("spec: amp_jitter must be in [0, 1)");
    if (phase_jitter < 0.0) throw std::invalid_argument("spec: phase_jitter must be >= 0");
    if (amplitude_bound() > 2.0)
        throw std::invalid_argument("spec: worst-case amplitude " + std::to_string(amplitude_bound()) +
                                    " exceeds the [-2, 2] bound");
}

double SyntheticMotionSpec::amplitude_bound() const {
    double total = 0.0;
    for (int h = 0; h < base_count; ++h) total += base_amp * std::pow(harmonic_decay, h);
    for (int h = 0; h < detail_count; ++h) total += detail_amp * std::pow(harmonic_decay, h);
    return total * (1.0 + amp_jitter);
}

std::vector<Harmonic> SyntheticMotionSpec::harmonics(int label, int channel) const {
    if (label < 0 || label >= num_classes) throw std::out_of_range("spec: unknown class label " + std::to_string(label));
    if (channel < 0 || channel >= channels) throw std::out_of_range("spec: channel out of range");
    std::vector<Harmonic> out;
    out.reserve(std::size_t(base_count + detail_count));
    double scale = channel_scale(label, channel, channels);
    for (int h = 0; h < base_count; ++h) {
        Harmonic harm;
        harm.freq = band_freq(base_freq_min, base_freq_max, label * base_count + h, num_classes * base_count);
        harm.amp = base_amp * std::pow(harmonic_decay, h) * scale;
        harm.phase = kTwoPi * double(channel) / double(channels) + 0.5 * std::numbers::pi * h;
        harm.detail = false;
        out.push_back(harm);
    }
    for (int h = 0; h < detail_count; ++h) {
        Harmonic harm;
        harm.freq = band_freq(detail_freq_min, detail_freq_max, label * detail_count + h, num_classes * detail_count);
        harm.amp = detail_amp * std::pow(harmonic_decay, h) * scale;
        harm.phase = kTwoPi * double(channel + 1) / double(channels + 1) + 0.5 * std::numbers::pi * h;
        harm.detail = true;
        out.push_back(harm);
    }
    return out;
}

Trajectory SyntheticMotionSpec::class_template(int label) const {
    Trajectory out(channels, frames, frame_rate);
    for (int j = 0; j < channels; ++j) {
        auto table = harmonics(label, j);
        auto dst = out.channel(j);
        for (int n = 0; n < frames; ++n) {
            double v = 0.0;
            for (const Harmonic& h : table) v += h.amp * std::sin(kTwoPi * h.freq * n + h.phase);
            dst[n] = v;
        }
    }
    return out;
}

std::vector<LabeledTrajectory> sample_dataset(const SyntheticMotionSpec& spec, int n, Rng& rng) {
    spec.validate();
    if (n < 1) throw std::invalid_argument("sample_dataset: n must be >= 1");
    std::vector<LabeledTrajectory> out;
    out.reserve(std::size_t(n));
    for (int i = 0; i < n; ++i) {
        int label = i % spec.num_classes;
        Trajectory traj(spec.channels, spec.frames, spec.frame_rate);
        for (int j = 0; j < spec.channels; ++j) {
            auto table = spec.harmonics(label, j);
            auto dst = traj.channel(j);
            // One jitter pair per harmonic per channel, drawn in table order.
            std::vector<double> amps(table.size()), phases(table.size());
            for (std::size_t h = 0; h < table.size(); ++h) {
                double u = 2.0 * rng.uniform() - 1.0;
                double v = 2.0 * rng.uniform() - 1.0;
                amps[h] = table[h].amp * (1.0 + spec.amp_jitter * u);
                phases[h] = table[h].phase + spec.phase_jitter * v;
            }
            for (int f = 0; f < spec.frames; ++f) {
                double value = 0.0;
                for (std::size_t h = 0; h < table.size(); ++h)
                    value += amps[h] * std::sin(kTwoPi * table[h].freq * f + phases[h]);
                dst[f] = value;
            }
        }
        out.push_back({std::move(traj), label});
    }
    return out;
}

SyntheticMotionSpec SyntheticMotionSpec::from_config(const KeyValueConfig& cfg) {
    SyntheticMotionSpec spec;
    spec.num_classes = int(cfg.get_int("num_classes", spec.num_classes));
    spec.channels = int(cfg.get_int("channels", spec.channels));
    spec.frames = int(cfg.get_int("frames", spec.frames));
    spec.frame_rate = cfg.get_double("frame_rate", spec.frame_rate);
    spec.base_count = int(cfg.get_int("base_count", spec.base_count));
    spec.base_freq_min = cfg.get_double("base_freq_min", spec.base_freq_min);
    spec.base_freq_max = cfg.get_double("base_freq_max", spec.base_freq_max);
    spec.base_amp = cfg.get_double("base_amp", spec.base_amp);
    spec.detail_count = int(cfg.get_int("detail_count", spec.detail_count));
    spec.detail_freq_min = cfg.get_double("detail_freq_min", spec.detail_freq_min);
    spec.detail_freq_max = cfg.get_double("detail_freq_max", spec.detail_freq_max);
    spec.detail_amp = cfg.get_double("detail_amp", spec.detail_amp);
    spec.harmonic_decay = cfg.get_double("harmonic_decay", spec.harmonic_decay);
    spec.amp_jitter = cfg.get_double("amp_jitter", spec.amp_jitter);
    spec.phase_jitter = cfg.get_double("phase_jitter", spec.phase_jitter);
    spec.validate();
    return spec;
}

void SyntheticMotionSpec::to_config(KeyValueConfig& cfg) const {
    cfg.set_int("num_classes", num_classes);
    cfg.set_int("channels", channels);
    cfg.set_int("frames", frames);
    cfg.set_double("frame_rate", frame_rate);
    cfg.set_int("base_count", base_count);
    cfg.set_double("base_freq_min", base_freq_min);
    cfg.set_double("base_freq_max", base_freq_max);
    cfg.set_double("base_amp", base_amp);
    cfg.set_int("detail_count", detail_count);
    cfg.set_double("detail_freq_min", detail_freq_min);
    cfg.set_double("detail_freq_max", detail_freq_max);
    cfg.set_double("detail_amp", detail_amp);
    cfg.set_double("harmonic_decay", harmonic_decay);
    cfg.set_double("amp_jitter", amp_jitter);
    cfg.set_double("phase_jitter", phase_jitter);
}

}  // namespace spg
