#include "spg/rng.hpp"

#include <cmath>
#include <numbers>

namespace spg {

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // u1 in (0, 1] so the log is finite.
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

std::uint64_t Rng::below(std::uint64_t n) {
    // Lemire multiply-shift; bias is negligible for the ranges used here.
    return std::uint64_t((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
}

std::uint64_t mix_seed(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a) {
    return mix_seed(mix_seed(base) ^ mix_seed(a ^ 0xa5a5a5a5a5a5a5a5ULL));
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    return derive_seed(derive_seed(base, a), b);
}

Trajectory gaussian_trajectory(int channels, int frames, double frame_rate, Rng& rng) {
    Trajectory out(channels, frames, frame_rate);
    for (double& v : out.data()) v = rng.gaussian();
    return out;
}

Trajectory gaussian_like(const Trajectory& shape_of, Rng& rng) {
    return gaussian_trajectory(shape_of.channels(), shape_of.frames(), shape_of.frame_rate(), rng);
}

}  // namespace spg
