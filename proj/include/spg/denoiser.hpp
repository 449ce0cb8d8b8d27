#pragma once

#include <vector>

#include "spg/condition.hpp"
#include "spg/trajectory.hpp"

namespace spg {

// Clean-prediction denoiser contract: g(x_t, t, c) -> x0_hat. Implementations
// must be pure functions of their arguments and parameters, and must preserve
// the input shape.
class Denoiser {
public:
    virtual ~Denoiser() = default;

    virtual Trajectory predict_x0(const Trajectory& x_t, int t, const Condition& c) const = 0;

    virtual int channels() const = 0;
    virtual int frames() const = 0;
    virtual double frame_rate() const { return 1.0; }

    // Whether the null condition is a valid input (required for CFG).
    virtual bool supports_null() const { return true; }

    // Embedding realization of a condition, for guidance methods that perturb
    // embeddings. Empty when the condition has no embedding realization.
    virtual std::vector<double> condition_embedding(const Condition&) const { return {}; }
};

}  // namespace spg
