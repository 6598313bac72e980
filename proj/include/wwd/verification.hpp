// verification.hpp
// Self-check suite behind `wwduality verify`: every library invariant is
// evaluated numerically and reported with its measured residual.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wwd {

struct CheckResult {
    std::string name;
    double residual;   // measured quantity
    double threshold;  // tolerance or lower bound
    bool at_least;     // true: pass iff residual >= threshold; false: pass iff residual <= threshold
    bool monte_carlo;  // statistical check, affected by --tolerance
    bool passed;
};

struct VerifyOptions {
    /// Overrides the tolerance of every statistical check when set.
    std::optional<double> monte_carlo_tolerance;
    std::uint64_t seed = 42;
    int samples = 10000;
    int delta_steps = 50;
    unsigned threads = 0;
};

std::vector<CheckResult> run_verification(const VerifyOptions& options);

}  // namespace wwd
