#include "spg/guidance.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "spg/diffusion.hpp"
#include "spg/io.hpp"
#include "spg/smoothing.hpp"

namespace spg {

const char* guidance_method_name(GuidanceMethod m) {
    switch (m) {
        case GuidanceMethod::None: return "none";
        case GuidanceMethod::Cfg: return "cfg";
        case GuidanceMethod::Spg: return "spg";
        case GuidanceMethod::SagDet: return "sag";
        case GuidanceMethod::Icg: return "icg";
        case GuidanceMethod::Sg: return "sg";
    }
    return "?";
}

GuidanceSpec GuidanceSpec::cfg(double s) {
    GuidanceSpec g;
    g.method = GuidanceMethod::Cfg;
    g.s = s;
    return g;
}

GuidanceSpec GuidanceSpec::spg(double s, int k, bool both_axes) {
    GuidanceSpec g;
    g.method = GuidanceMethod::Spg;
    g.s = s;
    g.k = k;
    g.both_axes = both_axes;
    return g;
}

GuidanceSpec GuidanceSpec::sag_det(double s, int k, bool both_axes) {
    GuidanceSpec g;
    g.method = GuidanceMethod::SagDet;
    g.s = s;
    g.k = k;
    g.both_axes = both_axes;
    return g;
}

GuidanceSpec GuidanceSpec::icg(double s, double sigma) {
    GuidanceSpec g;
    g.method = GuidanceMethod::Icg;
    g.s = s;
    g.icg_sigma = sigma;
    return g;
}

GuidanceSpec GuidanceSpec::sg(double s, int delta_t) {
    GuidanceSpec g;
    g.method = GuidanceMethod::Sg;
    g.s = s;
    g.delta_t = delta_t;
    return g;
}

int GuidanceSpec::extra_calls_per_step() const {
    switch (method) {
        case GuidanceMethod::None: return 0;
        default: return 1;
    }
}

std::string GuidanceSpec::to_token() const {
    switch (method) {
        case GuidanceMethod::None: return "none";
        case GuidanceMethod::Cfg: return "cfg:" + format_double(s);
        case GuidanceMethod::Spg:
            return std::string(both_axes ? "spg2d:" : "spg:") + format_double(s) + ":" + std::to_string(k);
        case GuidanceMethod::SagDet:
            return std::string(both_axes ? "sag2d:" : "sag:") + format_double(s) + ":" + std::to_string(k);
        case GuidanceMethod::Icg: return "icg:" + format_double(s) + ":" + format_double(icg_sigma);
        case GuidanceMethod::Sg: return "sg:" + format_double(s) + ":" + std::to_string(delta_t);
    }
    return "?";
}

namespace {

std::string trim(std::string_view v) {
    std::size_t b = 0, e = v.size();
    while (b < e && std::isspace(static_cast<unsigned char>(v[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(v[e - 1]))) --e;
    return std::string(v.substr(b, e - b));
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(trim(text.substr(start)));
            break;
        }
        parts.push_back(trim(text.substr(start, pos - start)));
        start = pos + 1;
    }
    return parts;
}

GuidanceSpec parse_token(const std::string& token) {
    auto parts = split(token, ':');
    const std::string& name = parts[0];
    auto need = [&](std::size_t lo, std::size_t hi) {
        if (parts.size() - 1 < lo || parts.size() - 1 > hi)
            throw std::invalid_argument("guidance token '" + token + "': wrong parameter count");
    };
    if (name == "cfg") {
        need(1, 1);
        return GuidanceSpec::cfg(parse_double(parts[1]));
    }
    if (name == "spg" || name == "spg2d") {
        need(2, 2);
        return GuidanceSpec::spg(parse_double(parts[1]), int(parse_int(parts[2])), name == "spg2d");
    }
    if (name == "sag" || name == "sag2d") {
        need(2, 2);
        return GuidanceSpec::sag_det(parse_double(parts[1]), int(parse_int(parts[2])), name == "sag2d");
    }
    if (name == "icg") {
        need(1, 2);
        double sigma = parts.size() > 2 ? parse_double(parts[2]) : kDefaultIcgSigma;
        return GuidanceSpec::icg(parse_double(parts[1]), sigma);
    }
    if (name == "sg") {
        need(2, 2);
        return GuidanceSpec::sg(parse_double(parts[1]), int(parse_int(parts[2])));
    }
    throw std::invalid_argument("unknown guidance method '" + name + "'");
}

}  // namespace

GuidanceStack GuidanceStack::parse(std::string_view text) {
    GuidanceStack stack;
    std::string trimmed = trim(text);
    if (trimmed.empty() || trimmed == "none") {
        return stack;
    }
    for (const std::string& token : split(trimmed, '+')) {
        if (token.empty()) throw std::invalid_argument("guidance stack: empty token");
        if (token == "none") continue;
        stack.entries.push_back(parse_token(token));
    }
    stack.validate();
    return stack;
}

std::string GuidanceStack::to_string() const {
    if (entries.empty()) return "none";
    std::string out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) out += " + ";
        out += entries[i].to_token();
    }
    return out;
}

int GuidanceStack::calls_per_step() const {
    int calls = 1;
    for (const auto& e : entries) calls += e.extra_calls_per_step();
    return calls;
}

void GuidanceStack::validate() const {
    int cfg_count = 0;
    for (const auto& e : entries) {
        if (e.s < 0.0) throw std::invalid_argument("guidance scale must be >= 0");
        switch (e.method) {
            case GuidanceMethod::Cfg:
                ++cfg_count;
                break;
            case GuidanceMethod::Spg:
            case GuidanceMethod::SagDet:
                if (e.k < 1 || e.k % 2 == 0)
                    throw std::invalid_argument("SPG/SAG kernel size must be odd and positive");
                break;
            case GuidanceMethod::Sg:
                if (e.delta_t < 0) throw std::invalid_argument("SG timestep shift must be >= 0");
                break;
            case GuidanceMethod::Icg:
                if (e.icg_sigma < 0.0) throw std::invalid_argument("ICG sigma must be >= 0");
                break;
            case GuidanceMethod::None:
                break;
        }
    }
    if (cfg_count > 1) throw std::invalid_argument("guidance stack: at most one CFG entry");
}

Trajectory combine(const Trajectory& strong, const Trajectory& weak, double s) {
    require_same_shape(strong, weak, "combine");
    if (s < 0.0) throw std::invalid_argument("combine: s must be >= 0");
    return lincomb(1.0 + s, strong, -s, weak);
}

Trajectory smoothed_renoise_weak(const Denoiser& g, const Trajectory& x0_strong, int t, const Condition& c, int k,
                                 const NoiseSchedule& schedule, const Trajectory& eps, bool both_axes) {
    Trajectory smoothed = both_axes ? smooth_both_axes(x0_strong, k) : temporal_smooth(x0_strong, k);
    Trajectory renoised = q_sample(smoothed, t, eps, schedule);
    return g.predict_x0(renoised, t, c);
}

Trajectory spg_weak(const Denoiser& g, const Trajectory& x_t, int t, const Condition& c, int k,
                    const NoiseSchedule& schedule, Rng& perturb, bool both_axes) {
    Trajectory strong = g.predict_x0(x_t, t, c);
    Trajectory eps = gaussian_like(x_t, perturb);
    return smoothed_renoise_weak(g, strong, t, c, k, schedule, eps, both_axes);
}

Trajectory sag_det_weak(const Denoiser& g, const Trajectory& x_t, int t, const Condition& c, int k,
                        const NoiseSchedule& schedule, bool both_axes) {
    Trajectory strong = g.predict_x0(x_t, t, c);
    Trajectory eps = implied_eps(x_t, strong, t, schedule);
    return smoothed_renoise_weak(g, strong, t, c, k, schedule, eps, both_axes);
}

std::pair<Trajectory, Trajectory> cfg_pair(const Denoiser& g, const Trajectory& x_t, int t, const Condition& c) {
    if (!g.supports_null()) throw std::runtime_error("CFG unavailable: denoiser rejects the null condition");
    Trajectory strong = g.predict_x0(x_t, t, c);
    Trajectory weak = g.predict_x0(x_t, t, Condition::null());
    return {std::move(strong), std::move(weak)};
}

Trajectory icg_weak(const Denoiser& g, const Trajectory& x_t, int t, const Condition& c, double sigma, Rng& perturb) {
    if (c.is_null()) throw std::invalid_argument("ICG is not applicable to the null condition");
    std::vector<double> emb = g.condition_embedding(c);
    if (emb.empty()) throw std::invalid_argument("ICG: condition has no embedding realization");
    for (double& v : emb) v += sigma * perturb.gaussian();
    return g.predict_x0(x_t, t, Condition::embedding(std::move(emb)));
}

Trajectory sg_weak(const Denoiser& g, const Trajectory& x_t, int t, const Condition& c, int delta_t,
                   const NoiseSchedule& schedule) {
    if (delta_t < 0) throw std::invalid_argument("sg_weak: delta_t must be >= 0");
    int shifted = std::min(t + delta_t, schedule.T);
    return g.predict_x0(x_t, shifted, c);
}

Trajectory apply_stack(const Denoiser& g, const GuidanceStack& stack, const Trajectory& x_t, int t, const Condition& c,
                       const NoiseSchedule& schedule, Rng& perturb, long* call_count) {
    stack.validate();
    long calls = 0;
    Trajectory strong = g.predict_x0(x_t, t, c);
    ++calls;
    Trajectory result = strong;
    for (const GuidanceSpec& entry : stack.entries) {
        // In the alternate composition mode the smoothed path starts from the
        // running combined prediction rather than the conditional one.
        const Trajectory& smooth_source = stack.smooth_combined ? result : strong;
        Trajectory weak;
        switch (entry.method) {
            case GuidanceMethod::None:
                continue;
            case GuidanceMethod::Cfg: {
                if (!g.supports_null()) throw std::runtime_error("CFG unavailable: denoiser rejects the null condition");
                weak = g.predict_x0(x_t, t, Condition::null());
                ++calls;
                break;
            }
            case GuidanceMethod::Spg: {
                Trajectory eps = gaussian_like(x_t, perturb);
                weak = smoothed_renoise_weak(g, smooth_source, t, c, entry.k, schedule, eps, entry.both_axes);
                ++calls;
                break;
            }
            case GuidanceMethod::SagDet: {
                Trajectory eps = implied_eps(x_t, smooth_source, t, schedule);
                weak = smoothed_renoise_weak(g, smooth_source, t, c, entry.k, schedule, eps, entry.both_axes);
                ++calls;
                break;
            }
            case GuidanceMethod::Icg: {
                weak = icg_weak(g, x_t, t, c, entry.icg_sigma, perturb);
                ++calls;
                break;
            }
            case GuidanceMethod::Sg: {
                weak = sg_weak(g, x_t, t, c, entry.delta_t, schedule);
                ++calls;
                break;
            }
        }
        if (entry.s != 0.0) {
            require_same_shape(weak, result, "apply_stack");
            for (std::size_t i = 0; i < result.size(); ++i)
                result.data()[i] += entry.s * (strong.data()[i] - weak.data()[i]);
        }
    }
    if (call_count) *call_count += calls;
    return result;
}

}  // namespace spg
