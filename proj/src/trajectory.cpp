#include "spg/trajectory.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>

#include "spg/io.hpp"

static_assert(std::endian::native == std::endian::little,
              "binary trajectory container assumes a little-endian host");

namespace spg {

Trajectory::Trajectory(int channels, int frames, double frame_rate)
    : channels_(channels), frames_(frames), frame_rate_(frame_rate) {
    if (channels < 1 || frames < 1) throw std::invalid_argument("Trajectory: channels and frames must be >= 1");
    data_.assign(std::size_t(channels) * frames, 0.0);
}

Trajectory Trajectory::zeros(int channels, int frames, double frame_rate) {
    return Trajectory(channels, frames, frame_rate);
}

Trajectory Trajectory::constant(int channels, int frames, double value, double frame_rate) {
    Trajectory out(channels, frames, frame_rate);
    for (double& v : out.data_) v = value;
    return out;
}

bool Trajectory::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

void require_same_shape(const Trajectory& a, const Trajectory& b, const char* where) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument(std::string(where) + ": shape mismatch (" + std::to_string(a.channels()) + "x" +
                                    std::to_string(a.frames()) + " vs " + std::to_string(b.channels()) + "x" +
                                    std::to_string(b.frames()) + ")");
    }
}

Trajectory& Trajectory::operator+=(const Trajectory& rhs) {
    require_same_shape(*this, rhs, "Trajectory::operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

Trajectory& Trajectory::operator-=(const Trajectory& rhs) {
    require_same_shape(*this, rhs, "Trajectory::operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

Trajectory& Trajectory::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

Trajectory operator+(Trajectory lhs, const Trajectory& rhs) {
    lhs += rhs;
    return lhs;
}

Trajectory operator-(Trajectory lhs, const Trajectory& rhs) {
    lhs -= rhs;
    return lhs;
}

Trajectory operator*(double s, Trajectory rhs) {
    rhs *= s;
    return rhs;
}

Trajectory lincomb(double a, const Trajectory& x, double b, const Trajectory& y) {
    require_same_shape(x, y, "lincomb");
    Trajectory out(x.channels(), x.frames(), x.frame_rate());
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] = a * x.data()[i] + b * y.data()[i];
    return out;
}

double l2_norm(const Trajectory& x) {
    double acc = 0.0;
    for (double v : x.data()) acc += v * v;
    return std::sqrt(acc);
}

double max_abs(const Trajectory& x) {
    double m = 0.0;
    for (double v : x.data()) m = std::max(m, std::fabs(v));
    return m;
}

double max_abs_diff(const Trajectory& a, const Trajectory& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a.data()[i] - b.data()[i]));
    return m;
}

std::string trajectory_to_text(const Trajectory& x) {
    std::string out;
    out += std::to_string(x.channels());
    out += ' ';
    out += std::to_string(x.frames());
    out += ' ';
    out += format_double(x.frame_rate());
    out += '\n';
    for (int n = 0; n < x.frames(); ++n) {
        for (int j = 0; j < x.channels(); ++j) {
            if (j) out += ' ';
            out += format_double(x.at(j, n));
        }
        out += '\n';
    }
    return out;
}

Trajectory trajectory_from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    long long channels = 0, frames = 0;
    std::string frame_rate_token;
    if (!(in >> channels >> frames >> frame_rate_token)) throw std::runtime_error("trajectory text: bad header");
    if (channels < 1 || frames < 1) throw std::runtime_error("trajectory text: invalid dimensions in header");
    Trajectory out(int(channels), int(frames), parse_double(frame_rate_token));
    std::string token;
    for (int n = 0; n < frames; ++n) {
        for (int j = 0; j < channels; ++j) {
            if (!(in >> token)) throw std::runtime_error("trajectory text: truncated data");
            out.at(j, n) = parse_double(token);
        }
    }
    if (in >> token) throw std::runtime_error("trajectory text: trailing data");
    if (!out.all_finite()) throw std::runtime_error("trajectory text: non-finite entries");
    return out;
}

namespace {

constexpr char kTrajMagic[5] = {'T', 'R', 'A', 'J', '1'};

template <typename T>
void append_raw(std::vector<unsigned char>& out, T value) {
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    out.insert(out.end(), buf, buf + sizeof(T));
}

template <typename T>
T read_raw(const std::vector<unsigned char>& bytes, std::size_t& offset) {
    if (offset + sizeof(T) > bytes.size()) throw std::runtime_error("trajectory binary: truncated");
    T value;
    std::memcpy(&value, bytes.data() + offset, sizeof(T));
    offset += sizeof(T);
    return value;
}

}  // namespace

std::vector<unsigned char> trajectory_to_binary(const Trajectory& x) {
    std::vector<unsigned char> out;
    out.reserve(5 + 8 + 8 + x.size() * 8);
    out.insert(out.end(), kTrajMagic, kTrajMagic + 5);
    append_raw<std::uint32_t>(out, std::uint32_t(x.channels()));
    append_raw<std::uint32_t>(out, std::uint32_t(x.frames()));
    append_raw<double>(out, x.frame_rate());
    for (int n = 0; n < x.frames(); ++n)
        for (int j = 0; j < x.channels(); ++j) append_raw<double>(out, x.at(j, n));
    return out;
}

Trajectory trajectory_from_binary(const std::vector<unsigned char>& bytes) {
    if (bytes.size() < 5 || std::memcmp(bytes.data(), kTrajMagic, 5) != 0)
        throw std::runtime_error("trajectory binary: bad magic");
    std::size_t offset = 5;
    auto channels = read_raw<std::uint32_t>(bytes, offset);
    auto frames = read_raw<std::uint32_t>(bytes, offset);
    auto frame_rate = read_raw<double>(bytes, offset);
    if (channels < 1 || frames < 1) throw std::runtime_error("trajectory binary: invalid dimensions");
    Trajectory out(int(channels), int(frames), frame_rate);
    for (std::uint32_t n = 0; n < frames; ++n)
        for (std::uint32_t j = 0; j < channels; ++j) out.at(int(j), int(n)) = read_raw<double>(bytes, offset);
    if (offset != bytes.size()) throw std::runtime_error("trajectory binary: trailing data");
    if (!out.all_finite()) throw std::runtime_error("trajectory binary: non-finite entries");
    return out;
}

void save_trajectory_text(const Trajectory& x, const std::string& path) {
    write_file_atomic(path, trajectory_to_text(x));
}

Trajectory load_trajectory_text(const std::string& path) {
    return trajectory_from_text(read_text_file(path));
}

void save_trajectory_binary(const Trajectory& x, const std::string& path) {
    auto bytes = trajectory_to_binary(x);
    write_file_atomic(path, bytes.data(), bytes.size());
}

Trajectory load_trajectory_binary(const std::string& path) {
    return trajectory_from_binary(read_binary_file(path));
}

}  // namespace spg
