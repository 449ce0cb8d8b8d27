#pragma once

#include <cstdint>
#include <vector>

#include "spg/rng.hpp"
#include "spg/trajectory.hpp"

namespace spg {

class KeyValueConfig;

struct Harmonic {
    double freq = 0.0;  // cycles per frame
    double amp = 0.0;
    double phase = 0.0;
    bool detail = false;
};

// Synthetic trajectory family: per class, a handful of low-frequency base
// harmonics carrying the structure plus small high-frequency detail
// harmonics, with per-sample amplitude and phase jitter. The two bands are
// separated so that a moving average in the swept kernel range [3, 11]
// removes detail while leaving the base mostly intact.
struct SyntheticMotionSpec {
    int num_classes = 3;
    int channels = 3;
    int frames = 48;
    double frame_rate = 20.0;

    int base_count = 2;
    double base_freq_min = 0.020;  // < 1/(2*11)
    double base_freq_max = 0.042;
    double base_amp = 0.8;

    int detail_count = 2;
    double detail_freq_min = 0.355;  // > 1/3
    double detail_freq_max = 0.46;
    double detail_amp = 0.18;

    double harmonic_decay = 0.55;  // amplitude ratio between successive harmonics
    double amp_jitter = 0.15;      // relative, uniform in [-a, a]
    double phase_jitter = 0.6;     // radians, uniform in [-p, p]

    // Kernel range the band constraints are checked against.
    static constexpr int kKernelMin = 3;
    static constexpr int kKernelMax = 11;

    void validate() const;

    // Deterministic harmonic table for one (class, channel): base harmonics
    // first, then detail harmonics.
    std::vector<Harmonic> harmonics(int label, int channel) const;

    // Zero-jitter draw: the class's noise-free template.
    Trajectory class_template(int label) const;

    // Worst-case |x| over the family (used by the [-2, 2] bound check).
    double amplitude_bound() const;

    static SyntheticMotionSpec from_config(const KeyValueConfig& cfg);
    void to_config(KeyValueConfig& cfg) const;
};

struct LabeledTrajectory {
    Trajectory trajectory;
    int label = 0;
};

// n i.i.d. draws with labels assigned round-robin.
std::vector<LabeledTrajectory> sample_dataset(const SyntheticMotionSpec& spec, int n, Rng& rng);

}  // namespace spg
