#include "doctest.h"

#include "oracles.hpp"
#include "wwd/whichway.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace wwd;

namespace {

constexpr double kPi = std::numbers::pi;
const Ket kZero = Ket::basis(3, 0);
const Ket kPlus = Ket::basis(3, 1);
const Ket kMinus = Ket::basis(3, 2);

}  // namespace

TEST_CASE("visibility") {
    CHECK(visibility(symmetric_wwd(0.5)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(visibility(symmetric_wwd(0.0)) == 0.0);
    CHECK(visibility(symmetric_wwd(1.0)) == 1.0);

    const WwdPair w(std::polar(0.6, 0.4), Complex(0.8), std::polar(0.3, -1.0), std::polar(std::sqrt(0.91), 2.0));
    CHECK(std::abs(visibility(w) - std::abs(inner(w.chi_a(), w.chi_b()))) < 1e-12);
}

TEST_CASE("estimate_visibility_from_pattern") {
    CHECK(std::abs(estimate_visibility_from_pattern(symmetric_wwd(1.0), 64) - 1.0) < 1e-3);
    CHECK(estimate_visibility_from_pattern(symmetric_wwd(0.0), 64) == 0.0);
    CHECK(std::abs(estimate_visibility_from_pattern(symmetric_wwd(0.9), 256) - 0.9) < 1e-3);
    // odd grid misses delta = pi; still converges as the grid refines
    CHECK(std::abs(estimate_visibility_from_pattern(symmetric_wwd(0.7), 1001) - 0.7) < 1e-4);
    CHECK_THROWS_AS(estimate_visibility_from_pattern(symmetric_wwd(0.5), 7), std::invalid_argument);
}

TEST_CASE("outcome_likelihood") {
    const WwdPair w = symmetric_wwd(0.5);
    CHECK(outcome_likelihood(w, kPlus) == 1.0);
    CHECK(outcome_likelihood(w, kZero) == doctest::Approx(0.5).epsilon(1e-15));
    // overlaps 1 and 0.25 -> 1 / 1.25
    const Ket v = Ket{1.0, 1.0, 0.0}.normalized();
    CHECK(std::abs(outcome_likelihood(w, v) - 0.8) < 1e-14);

    const Ket orthogonal = Ket{1.0, -1.0, -1.0}.normalized();
    CHECK_THROWS_AS(outcome_likelihood(w, orthogonal), UndefinedOutcome);
}

TEST_CASE("likelihood: WWD read first") {
    SUBCASE("natural basis at V = 0.5") {
        const WwdPair w = symmetric_wwd(0.5);
        const auto rep = likelihood(w, natural_basis(), detector_state_wwd_first(w));
        REQUIRE(rep.per_outcome.size() == 3);
        CHECK(std::abs(rep.per_outcome[0].weight - 0.5) < 1e-15);
        CHECK(std::abs(rep.per_outcome[1].weight - 0.25) < 1e-15);
        CHECK(std::abs(rep.per_outcome[2].weight - 0.25) < 1e-15);
        CHECK(std::abs(rep.total_l - 0.75) < 1e-15);
        CHECK(std::abs(rep.d_value - 0.5) < 1e-15);
    }
    SUBCASE("identical detector states give a coin flip in any basis") {
        const WwdPair w = symmetric_wwd(1.0);
        std::mt19937_64 rng(1);
        for (int i = 0; i < 50; ++i) {
            const auto rep = likelihood(w, haar_random_basis(rng, 3), detector_state_wwd_first(w));
            CHECK(std::abs(rep.total_l - 0.5) < 1e-12);
            CHECK(std::abs(rep.d_value) < 1e-12);
        }
    }
    SUBCASE("report invariants") {
        std::mt19937_64 rng(2);
        for (int i = 0; i <= 10; ++i) {
            const WwdPair w = symmetric_wwd(i / 10.0);
            const auto rho = detector_state_wwd_first(w);
            for (int t = 0; t < 50; ++t) {
                const auto rep = likelihood(w, haar_random_basis(rng, 3), rho);
                double wsum = 0.0, lsum = 0.0;
                for (const auto& o : rep.per_outcome) {
                    CHECK(o.l_j >= 0.5 - 1e-12);
                    CHECK(o.l_j <= 1.0 + 1e-12);
                    wsum += o.weight;
                    lsum += o.l_j * o.weight;
                }
                CHECK(std::abs(wsum - 1.0) < 1e-12);
                CHECK(std::abs(lsum - rep.total_l) < 1e-12);
                CHECK(rep.d_value >= -1e-12);
                CHECK(rep.d_value <= 1.0 + 1e-12);
            }
        }
    }
    SUBCASE("incomplete basis") {
        const WwdPair w = symmetric_wwd(0.5);
        CHECK_THROWS_AS(likelihood(w, MeasurementBasis({kPlus}), detector_state_wwd_first(w)), IncompleteBasis);
    }
}

TEST_CASE("likelihood: quanton read first, natural basis") {
    const WwdPair w = symmetric_wwd(0.5);
    const auto proj = detector_state_quanton_first(w, PhaseShift(0.0), QuantonOutcome::a);
    const auto rep = likelihood(w, natural_basis(), proj.state);
    CHECK(std::abs(rep.d_value - 1.0 / 3.0) < 1e-14);
    CHECK(std::abs(rep.d_value - testing::direct_d_value(w.chi_a(), w.chi_b(), natural_basis().vectors(),
                                                         proj.state)) < 1e-14);

    // pure-state overload agrees with the density-operator one
    const auto rep_rho = likelihood(w, natural_basis(), DensityOperator::pure(proj.state));
    CHECK(std::abs(rep.total_l - rep_rho.total_l) < 1e-14);
}

TEST_CASE("natural-basis closed form over the grid") {
    for (double v : {0.5, 0.9, 0.97}) {
        const WwdPair w = symmetric_wwd(v);
        for (QuantonOutcome out : {QuantonOutcome::a, QuantonOutcome::b}) {
            for (int k = 0; k < 50; ++k) {
                const PhaseShift ps(2.0 * kPi * k / 50);
                const Ket psi = detector_state_quanton_first(w, ps, out).state;
                const double d = likelihood(w, natural_basis(), psi).d_value;
                CHECK(std::abs(d - testing::natural_line_closed_form(v, sign(out), ps.delta())) < 1e-12);
                CHECK(std::abs(d - distinguishability_in_basis(w, natural_basis(), psi)) < 1e-15);
            }
        }
    }
}

TEST_CASE("basis completion outside span{chi_a, chi_b} leaves L unchanged") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    for (double v : {0.1, 0.5, 0.9}) {
        const WwdPair w = symmetric_wwd(v);
        const auto rho = detector_state_wwd_first(w);
        const Ket e1 = w.chi_a().normalized();
        const Ket e2 = (w.chi_b() - inner(e1, w.chi_b()) * e1).normalized();
        Ket c = Ket{1.0, 0.0, 0.0} - inner(e1, kZero) * e1 - inner(e2, kZero) * e2;
        c = c.normalized();
        for (int i = 0; i < 20; ++i) {
            const double t = angle(rng), phi = angle(rng);
            const Ket u1 = std::cos(t) * e1 + std::polar(std::sin(t), phi) * e2;
            const Ket u2 = -std::polar(std::sin(t), -phi) * e1 + std::cos(t) * e2;
            const double l2 = likelihood(w, MeasurementBasis({u1, u2}), rho).total_l;
            const double l3 = likelihood(w, MeasurementBasis({u1, u2, c}), rho).total_l;
            CHECK(std::abs(l3 - l2) < 1e-12);
        }
    }
}

TEST_CASE("englert_basis") {
    SUBCASE("V = 0 contains |+> and |->") {
        const auto b = englert_basis(symmetric_wwd(0.0));
        CHECK(std::abs(std::abs(inner(b[0], kPlus)) - 1.0) < 1e-12);
        CHECK(std::abs(std::abs(inner(b[1], kZero)) - 1.0) < 1e-12);
        CHECK(std::abs(std::abs(inner(b[2], kMinus)) - 1.0) < 1e-12);
    }
    SUBCASE("V = 1 falls back to the natural basis") {
        const auto b = englert_basis(symmetric_wwd(1.0));
        for (std::size_t k = 0; k < 3; ++k) CHECK(b[k] == Ket::basis(3, k));
    }
    SUBCASE("V = 0.5 eigenvectors carry eigenvalues (sqrt .75, 0, -sqrt .75)") {
        const WwdPair w = symmetric_wwd(0.5);
        const auto b = englert_basis(w);
        const Operator rho = path_difference_operator(w);
        const double c = std::sqrt(0.75);
        const double expected[3] = {c, 0.0, -c};
        for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(rho.expectation(b[k]) - expected[k]) < 1e-12);
    }
}

TEST_CASE("englert_distinguishability") {
    CHECK(std::abs(englert_distinguishability(symmetric_wwd(0.6)) - 0.8) < 1e-15);
    CHECK(englert_distinguishability(symmetric_wwd(0.0)) == 1.0);
    CHECK(englert_distinguishability(symmetric_wwd(1.0)) == 0.0);

    for (int i = 0; i <= 20; ++i) {
        const WwdPair w = symmetric_wwd(i / 20.0);
        const double d = englert_distinguishability(w);
        CHECK(std::abs(d - trace_norm_half(path_difference_operator(w))) < 1e-10);
        const auto rep = likelihood(w, englert_basis(w), detector_state_wwd_first(w));
        CHECK(std::abs(rep.d_value - d) < 1e-10);
    }
}

TEST_CASE("Englert basis is optimal when the WWD is read first") {
    std::mt19937_64 rng(21);
    for (double v : {0.25, 0.5, 0.75, 0.9}) {
        const WwdPair w = symmetric_wwd(v);
        const auto rho = detector_state_wwd_first(w);
        const double d_englert = englert_distinguishability(w);
        double best = -1.0;
        for (int i = 0; i < 1000; ++i) best = std::max(best, likelihood(w, haar_random_basis(rng, 3), rho).d_value);
        CHECK(best <= d_englert + 1e-9);
    }
}

TEST_CASE("Englert basis at delta = 0 when the quanton is read first") {
    for (int i = 0; i < 20; ++i) {
        const double v = i / 20.0;
        const WwdPair w = symmetric_wwd(v);
        const Ket psi = detector_state_quanton_first(w, PhaseShift(0.0), QuantonOutcome::a).state;
        const auto b = englert_basis(w);
        const double d = likelihood(w, b, psi).d_value;
        CHECK(std::abs(d - std::sqrt(1.0 - v * v)) < 1e-10);
        CHECK(std::abs(d - testing::direct_d_value(w.chi_a(), w.chi_b(), b.vectors(), psi)) < 1e-14);
    }
}

TEST_CASE("duality_residual") {
    for (int i = 0; i <= 20; ++i) {
        const double v = i / 20.0;
        CHECK(std::abs(duality_residual(std::sqrt(1.0 - v * v), v)) < 1e-12);
    }
    CHECK(std::abs(duality_residual(1.0, 0.9) - 0.81) < 1e-15);
    CHECK(duality_residual(0.0, 0.0) == -1.0);
}
