#include "wwd/interferometer.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace wwd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Applies a 2x2 matrix to the quanton factor of a quanton or joint ket.
Ket apply_on_quanton(const Ket& k, Complex m00, Complex m01, Complex m10, Complex m11) {
    if (k.dim() == 0 || k.dim() % kQuantonDim != 0) {
        throw std::invalid_argument("quanton gate: ket dimension must be a multiple of 2");
    }
    const std::size_t d = k.dim() / kQuantonDim;
    Ket out(k.dim());
    for (std::size_t i = 0; i < d; ++i) {
        const Complex a = k[i];
        const Complex b = k[d + i];
        out[i] = m00 * a + m01 * b;
        out[d + i] = m10 * a + m11 * b;
    }
    return out;
}

}  // namespace

WwdPair::WwdPair(Complex alpha_a, Complex beta_a, Complex alpha_b, Complex beta_b)
    : alpha_a_(alpha_a), beta_a_(beta_a), alpha_b_(alpha_b), beta_b_(beta_b) {
    const double na = std::norm(alpha_a_) + std::norm(beta_a_);
    const double nb = std::norm(alpha_b_) + std::norm(beta_b_);
    if (std::abs(na - 1.0) > kNormTolerance || std::abs(nb - 1.0) > kNormTolerance) {
        throw std::invalid_argument("WwdPair: detector states must be normalized");
    }
}

PhaseShift::PhaseShift(double radians) {
    if (!std::isfinite(radians)) {
        throw std::invalid_argument("PhaseShift: phase must be finite");
    }
    double r = std::fmod(radians, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;  // -tiny + 2pi rounds up to 2pi
    delta_ = r;
}

QuantonOutcome outcome_from_sign(int sigma) {
    if (sigma == 1) return QuantonOutcome::a;
    if (sigma == -1) return QuantonOutcome::b;
    throw std::invalid_argument("quanton outcome must be +1 or -1, got " + std::to_string(sigma));
}

WwdPair symmetric_wwd(double visibility) {
    if (!(visibility >= 0.0 && visibility <= 1.0)) {
        throw std::invalid_argument("symmetric_wwd: visibility must lie in [0, 1]");
    }
    const double alpha = std::sqrt(visibility);
    const double beta = std::sqrt(1.0 - visibility);
    return WwdPair(alpha, beta, alpha, beta);
}

Ket hadamard_on_quanton(const Ket& k) {
    const double h = 1.0 / std::numbers::sqrt2;
    return apply_on_quanton(k, h, h, h, -h);
}

Ket phase_shift_on_quanton(const Ket& k, PhaseShift ps) {
    return apply_on_quanton(k, 1.0, 0.0, 0.0, ps.factor());
}

Ket record_path(const Ket& quanton, const WwdPair& wwd) {
    if (quanton.dim() != kQuantonDim) {
        throw std::invalid_argument("record_path: expected a bare quanton ket");
    }
    const Ket ea = Ket::basis(kQuantonDim, 0);
    const Ket eb = Ket::basis(kQuantonDim, 1);
    return quanton[0] * tensor(ea, wwd.chi_a()) + quanton[1] * tensor(eb, wwd.chi_b());
}

Ket final_joint_state(const WwdPair& wwd, PhaseShift ps) {
    const Ket input = Ket::basis(kQuantonDim, 0);
    const Ket split = hadamard_on_quanton(input);
    const Ket shifted = phase_shift_on_quanton(split, ps);
    const Ket entangled = record_path(shifted, wwd);
    return hadamard_on_quanton(entangled).normalized();
}

double quanton_probability(const WwdPair& wwd, PhaseShift ps, QuantonOutcome out) {
    const Complex f = static_cast<double>(sign(out)) * ps.factor();
    return 0.25 * (wwd.chi_a() + f * wwd.chi_b()).norm_squared();
}

DensityOperator detector_state_wwd_first(const WwdPair& wwd) {
    Operator rho = Operator::projector(wwd.chi_a()) + Operator::projector(wwd.chi_b());
    rho *= 0.5;
    return DensityOperator(std::move(rho));
}

ProjectedDetector detector_state_quanton_first(const WwdPair& wwd, PhaseShift ps, QuantonOutcome out) {
    const Complex f = static_cast<double>(sign(out)) * ps.factor();
    const Ket unnormalized{wwd.alpha_a() + f * wwd.alpha_b(), wwd.beta_a(), f * wwd.beta_b()};
    const double probability = 0.25 * unnormalized.norm_squared();
    if (probability < kZeroProbability) {
        throw ZeroProbabilityOutcome("quanton outcome sigma=" + std::to_string(sign(out)) +
                                     " has zero probability at delta=" + std::to_string(ps.delta()));
    }
    return {unnormalized.normalized(), probability};
}

}  // namespace wwd
