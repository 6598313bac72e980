// interferometer.hpp
// Symmetric two-way interferometer with a which-way detector (WWD):
// beam splitter -> phase shifter + WWD -> beam merger.
//
// Index conventions:
//   quanton:  0 = |psi_a>, 1 = |psi_b>
//   detector: natural basis 0 = |0>, 1 = |+>, 2 = |->
//   joint:    3*q + d (quanton-major)

#pragma once

#include "wwd/hilbert.hpp"

#include <stdexcept>

namespace wwd {

inline constexpr std::size_t kQuantonDim = 2;
inline constexpr std::size_t kDetectorDim = 3;
inline constexpr std::size_t kJointDim = kQuantonDim * kDetectorDim;

/// Outcome probabilities below this are treated as "no signal".
inline constexpr double kZeroProbability = 1e-14;

/// Raised when a post-measurement state is requested for an outcome that
/// cannot occur.
class ZeroProbabilityOutcome : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Conditional detector states
///   |chi_a> = alpha_a |0> + beta_a |+>
///   |chi_b> = alpha_b |0> + beta_b |->
class WwdPair {
public:
    /// Throws std::invalid_argument unless both states are normalized.
    WwdPair(Complex alpha_a, Complex beta_a, Complex alpha_b, Complex beta_b);

    Complex alpha_a() const noexcept { return alpha_a_; }
    Complex beta_a() const noexcept { return beta_a_; }
    Complex alpha_b() const noexcept { return alpha_b_; }
    Complex beta_b() const noexcept { return beta_b_; }

    Ket chi_a() const { return Ket{alpha_a_, beta_a_, 0.0}; }
    Ket chi_b() const { return Ket{alpha_b_, 0.0, beta_b_}; }

private:
    Complex alpha_a_, beta_a_, alpha_b_, beta_b_;
};

/// Relative phase between the arms, reduced to [0, 2pi).
class PhaseShift {
public:
    explicit PhaseShift(double radians);
    double delta() const noexcept { return delta_; }
    /// e^{i delta}
    Complex factor() const noexcept { return std::polar(1.0, delta_); }

private:
    double delta_;
};

/// Output port in which the quanton was found: +1 for |psi_a>, -1 for |psi_b>.
enum class QuantonOutcome : int { a = 1, b = -1 };

constexpr int sign(QuantonOutcome out) noexcept { return static_cast<int>(out); }
QuantonOutcome outcome_from_sign(int sigma);

/// Identical detectors in both arms: alpha_a = alpha_b = sqrt(V),
/// beta_a = beta_b = sqrt(1 - V), all real. Then |<chi_a|chi_b>| = V.
WwdPair symmetric_wwd(double visibility);

// Pipeline stages. Each acts on the quanton factor only and accepts either a
// bare quanton ket (dim 2) or a joint ket (dim 6).
Ket hadamard_on_quanton(const Ket& k);
Ket phase_shift_on_quanton(const Ket& k, PhaseShift ps);
/// |q> (x) |chi_i>  ->  sum_q c_q |q> (x) |chi_q>; input must be a bare quanton.
Ket record_path(const Ket& quanton, const WwdPair& wwd);

/// BM . WWD . PS . BS applied to |psi_a>, normalized.
Ket final_joint_state(const WwdPair& wwd, PhaseShift ps);

/// Probability of finding the quanton in the given port,
/// ||chi_a + sigma e^{i delta} chi_b||^2 / 4.
double quanton_probability(const WwdPair& wwd, PhaseShift ps, QuantonOutcome out);

/// Reduced detector state when the detector is read before the quanton,
/// (|chi_a><chi_a| + |chi_b><chi_b|) / 2.
DensityOperator detector_state_wwd_first(const WwdPair& wwd);

struct ProjectedDetector {
    Ket state;           // normalized
    double probability;  // of the quanton outcome that produced it
};

/// Detector state after the quanton was found in `out`:
/// (alpha_a + sigma e^{i delta} alpha_b)|0> + beta_a|+> + sigma e^{i delta} beta_b|->, normalized.
/// Throws ZeroProbabilityOutcome when the outcome probability is below kZeroProbability.
ProjectedDetector detector_state_quanton_first(const WwdPair& wwd, PhaseShift ps, QuantonOutcome out);

}  // namespace wwd
