#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace spg {

// A J x N sample: J spatial channels by N time frames. Storage is row-major
// with time as the fast axis, so each channel is contiguous over frames.
// frame_rate is carried along as metadata only.
class Trajectory {
public:
    Trajectory() = default;
    Trajectory(int channels, int frames, double frame_rate = 1.0);

    static Trajectory zeros(int channels, int frames, double frame_rate = 1.0);
    static Trajectory constant(int channels, int frames, double value, double frame_rate = 1.0);

    int channels() const { return channels_; }
    int frames() const { return frames_; }
    double frame_rate() const { return frame_rate_; }
    void set_frame_rate(double fr) { frame_rate_ = fr; }

    double& at(int channel, int frame) { return data_[std::size_t(channel) * frames_ + frame]; }
    const double& at(int channel, int frame) const { return data_[std::size_t(channel) * frames_ + frame]; }

    std::span<double> channel(int j) { return {data_.data() + std::size_t(j) * frames_, std::size_t(frames_)}; }
    std::span<const double> channel(int j) const {
        return {data_.data() + std::size_t(j) * frames_, std::size_t(frames_)};
    }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }
    std::size_t size() const { return data_.size(); }

    bool same_shape(const Trajectory& other) const {
        return channels_ == other.channels_ && frames_ == other.frames_;
    }
    bool all_finite() const;

    Trajectory& operator+=(const Trajectory& rhs);
    Trajectory& operator-=(const Trajectory& rhs);
    Trajectory& operator*=(double s);

private:
    int channels_ = 0;
    int frames_ = 0;
    double frame_rate_ = 1.0;
    std::vector<double> data_;
};

void require_same_shape(const Trajectory& a, const Trajectory& b, const char* where);

Trajectory operator+(Trajectory lhs, const Trajectory& rhs);
Trajectory operator-(Trajectory lhs, const Trajectory& rhs);
Trajectory operator*(double s, Trajectory rhs);

// a*x + b*y
Trajectory lincomb(double a, const Trajectory& x, double b, const Trajectory& y);

double l2_norm(const Trajectory& x);
double max_abs(const Trajectory& x);
double max_abs_diff(const Trajectory& a, const Trajectory& b);

// Text container: header line "J N frame_rate", then N rows of J values
// (one row per frame). Values are written with round-trip precision.
std::string trajectory_to_text(const Trajectory& x);
Trajectory trajectory_from_text(std::string_view text);

// Binary container: magic "TRAJ1", u32 J, u32 N, f64 frame_rate, then
// N*J little-endian f64 values in frame order.
std::vector<unsigned char> trajectory_to_binary(const Trajectory& x);
Trajectory trajectory_from_binary(const std::vector<unsigned char>& bytes);

void save_trajectory_text(const Trajectory& x, const std::string& path);
Trajectory load_trajectory_text(const std::string& path);
void save_trajectory_binary(const Trajectory& x, const std::string& path);
Trajectory load_trajectory_binary(const std::string& path);

}  // namespace spg
