#include "doctest.h"

#include "wwd/interferometer.hpp"

#include <cmath>
#include <numbers>

using namespace wwd;

namespace {

constexpr double kPi = std::numbers::pi;

Ket joint(std::size_t q, std::size_t d) { return tensor(Ket::basis(2, q), Ket::basis(3, d)); }

}  // namespace

TEST_CASE("symmetric_wwd") {
    const WwdPair full = symmetric_wwd(1.0);
    CHECK(full.alpha_a() == 1.0);
    CHECK(full.beta_a() == 0.0);
    CHECK(full.chi_a() == full.chi_b());

    const WwdPair perfect = symmetric_wwd(0.0);
    CHECK(perfect.alpha_a() == 0.0);
    CHECK(perfect.beta_b() == 1.0);
    CHECK(inner(perfect.chi_a(), perfect.chi_b()) == 0.0);

    const WwdPair half = symmetric_wwd(0.5);
    CHECK(half.alpha_a() == std::sqrt(0.5));
    CHECK(half.beta_b() == std::sqrt(0.5));
    CHECK(std::abs(inner(half.chi_a(), half.chi_b()) - 0.5) < 1e-15);

    CHECK_THROWS_AS(symmetric_wwd(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(symmetric_wwd(1.1), std::invalid_argument);
    CHECK_THROWS_AS(WwdPair(1.0, 1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("PhaseShift range reduction") {
    CHECK(PhaseShift(0.0).delta() == 0.0);
    CHECK(PhaseShift(2.0 * kPi).delta() == 0.0);
    CHECK(std::abs(PhaseShift(-kPi / 2).delta() - 1.5 * kPi) < 1e-15);
    CHECK(std::abs(PhaseShift(7.0 * kPi).delta() - kPi) < 1e-14);
    CHECK(PhaseShift(-1e-300).delta() < 2.0 * kPi);
    CHECK_THROWS_AS(PhaseShift(std::nan("")), std::invalid_argument);
}

TEST_CASE("QuantonOutcome") {
    CHECK(sign(QuantonOutcome::a) == 1);
    CHECK(sign(QuantonOutcome::b) == -1);
    CHECK(outcome_from_sign(-1) == QuantonOutcome::b);
    CHECK_THROWS_AS(outcome_from_sign(0), std::invalid_argument);
}

TEST_CASE("final_joint_state") {
    SUBCASE("empty WWD, balanced: everything in port a") {
        // Both Hadamards cancel exactly after normalization.
        CHECK(final_joint_state(symmetric_wwd(1.0), PhaseShift(0.0)) == joint(0, 0));
    }
    SUBCASE("empty WWD, delta = pi: everything in port b") {
        const Ket out = final_joint_state(symmetric_wwd(1.0), PhaseShift(kPi));
        CHECK(std::sqrt((out - joint(1, 0)).norm_squared()) < 1e-15);
    }
    SUBCASE("orthogonal detector states: uniform over (port) x (+, -)") {
        for (double delta : {0.0, 0.3, 2.0, kPi, 5.5}) {
            const Ket out = final_joint_state(symmetric_wwd(0.0), PhaseShift(delta));
            for (std::size_t q = 0; q < 2; ++q) {
                CHECK(std::norm(out[3 * q + 0]) < 1e-30);
                CHECK(std::abs(std::norm(out[3 * q + 1]) - 0.25) < 1e-15);
                CHECK(std::abs(std::norm(out[3 * q + 2]) - 0.25) < 1e-15);
            }
        }
    }
    SUBCASE("proportional to the textbook expansion") {
        const WwdPair w(Complex(0.6, 0.0), Complex(0.0, 0.8), std::polar(0.8, 0.3), Complex(0.6, 0.0));
        const PhaseShift ps(1.1);
        const Ket expected = (tensor(Ket::basis(2, 0), w.chi_a() + ps.factor() * w.chi_b()) +
                              tensor(Ket::basis(2, 1), w.chi_a() - ps.factor() * w.chi_b()))
                                 .normalized();
        const Ket out = final_joint_state(w, ps);
        CHECK(std::abs(std::abs(inner(expected, out)) - 1.0) < 1e-14);
        CHECK(std::abs(out.norm_squared() - 1.0) < 1e-12);
    }
}

TEST_CASE("pipeline stages") {
    SUBCASE("double Hadamard on a bare quanton") {
        const Ket back = hadamard_on_quanton(hadamard_on_quanton(Ket::basis(2, 0)));
        CHECK(std::sqrt((back - Ket::basis(2, 0)).norm_squared()) < 1e-15);
    }
    SUBCASE("phase shifter commutes with the WWD") {
        for (double v : {0.0, 0.3, 0.77, 1.0}) {
            const WwdPair w = symmetric_wwd(v);
            for (int k = 0; k < 21; ++k) {
                const PhaseShift ps(0.3 * k);
                const Ket split = hadamard_on_quanton(Ket::basis(2, 0));
                const Ket a = record_path(phase_shift_on_quanton(split, ps), w);
                const Ket b = phase_shift_on_quanton(record_path(split, w), ps);
                CHECK(std::sqrt((a - b).norm_squared()) < 1e-12);
            }
        }
    }
    SUBCASE("record_path rejects joint input") {
        CHECK_THROWS_AS(record_path(joint(0, 0), symmetric_wwd(0.5)), std::invalid_argument);
    }
}

TEST_CASE("quanton_probability") {
    CHECK(quanton_probability(symmetric_wwd(1.0), PhaseShift(kPi), QuantonOutcome::a) < 1e-12);
    CHECK(quanton_probability(symmetric_wwd(0.0), PhaseShift(1.234), QuantonOutcome::a) == doctest::Approx(0.5));
    CHECK(std::abs(quanton_probability(symmetric_wwd(0.5), PhaseShift(0.0), QuantonOutcome::a) - 0.75) < 1e-15);

    // (1 + sigma Re(e^{i delta} <chi_a|chi_b>)) / 2 and normalization over sigma
    for (int i = 0; i <= 20; ++i) {
        const WwdPair w = symmetric_wwd(i / 20.0);
        for (int k = 0; k < 50; ++k) {
            const PhaseShift ps(2.0 * kPi * k / 50);
            const double pa = quanton_probability(w, ps, QuantonOutcome::a);
            const double pb = quanton_probability(w, ps, QuantonOutcome::b);
            CHECK(std::abs(pa + pb - 1.0) < 1e-12);
            const double closed = 0.5 * (1.0 + (ps.factor() * inner(w.chi_a(), w.chi_b())).real());
            CHECK(std::abs(pa - closed) < 1e-12);
        }
    }
}

TEST_CASE("quanton probability matches the joint state") {
    const WwdPair w = symmetric_wwd(0.3);
    const PhaseShift ps(0.9);
    const Ket out = final_joint_state(w, ps);
    double pa = 0.0;
    for (std::size_t d = 0; d < 3; ++d) pa += std::norm(out[d]);
    CHECK(std::abs(pa - quanton_probability(w, ps, QuantonOutcome::a)) < 1e-14);
}

TEST_CASE("detector_state_wwd_first") {
    CHECK(detector_state_wwd_first(symmetric_wwd(0.0)).matrix().max_abs_diff(Operator::diagonal({0, 0.5, 0.5})) <
          1e-15);
    CHECK(detector_state_wwd_first(symmetric_wwd(1.0)).matrix().max_abs_diff(
              Operator::projector(Ket::basis(3, 0))) < 1e-15);

    const WwdPair w = symmetric_wwd(0.5);
    for (int k = 0; k < 10; ++k) {
        const auto traced = partial_trace_quanton(final_joint_state(w, PhaseShift(0.61 * k)));
        CHECK(detector_state_wwd_first(w).matrix().max_abs_diff(traced.matrix()) < 1e-12);
    }
}

TEST_CASE("detector_state_quanton_first") {
    SUBCASE("V = 0.5, delta = pi, sigma = +1: the |0> component vanishes") {
        const auto proj = detector_state_quanton_first(symmetric_wwd(0.5), PhaseShift(kPi), QuantonOutcome::a);
        // The double nearest pi leaves ~1e-16 of sin(delta) behind.
        CHECK(std::abs(proj.state[0]) < 1e-15);
        const Ket expected = Ket{0.0, std::sqrt(0.5), -std::sqrt(0.5)};
        CHECK(std::abs(std::abs(inner(expected, proj.state)) - 1.0) < 1e-15);
        CHECK(std::abs(proj.probability - 0.25) < 1e-15);
    }
    SUBCASE("V = 1, delta = pi, sigma = +1: no signal") {
        CHECK_THROWS_AS(detector_state_quanton_first(symmetric_wwd(1.0), PhaseShift(kPi), QuantonOutcome::a),
                        ZeroProbabilityOutcome);
    }
    SUBCASE("V = 0.5, delta = 0, sigma = +1") {
        const auto proj = detector_state_quanton_first(symmetric_wwd(0.5), PhaseShift(0.0), QuantonOutcome::a);
        // (sqrt(2)|0> + sqrt(.5)|+> + sqrt(.5)|->) / sqrt(3)
        const Ket expected = Ket{std::sqrt(2.0), std::sqrt(0.5), std::sqrt(0.5)} * Complex(1.0 / std::sqrt(3.0));
        CHECK(std::sqrt((proj.state - expected).norm_squared()) < 1e-15);
        CHECK(std::abs(proj.probability - 0.75) < 1e-15);
    }
    SUBCASE("probability-weighted mixture reproduces the traced state") {
        for (int i = 0; i < 10; ++i) {
            const WwdPair w = symmetric_wwd(i / 9.0);
            for (int k = 0; k < 10; ++k) {
                const PhaseShift ps(2.0 * kPi * k / 10);
                Operator mix(3);
                double total = 0.0;
                for (QuantonOutcome out : {QuantonOutcome::a, QuantonOutcome::b}) {
                    try {
                        const auto proj = detector_state_quanton_first(w, ps, out);
                        CHECK(std::abs(proj.probability - quanton_probability(w, ps, out)) < 1e-15);
                        mix += Complex(proj.probability) * Operator::projector(proj.state);
                        total += proj.probability;
                    } catch (const ZeroProbabilityOutcome&) {
                        CHECK(quanton_probability(w, ps, out) < kZeroProbability);
                    }
                }
                CHECK(std::abs(total - 1.0) < 1e-12);
                CHECK(mix.max_abs_diff(detector_state_wwd_first(w).matrix()) < 1e-12);
            }
        }
    }
}
