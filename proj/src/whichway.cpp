#include "wwd/whichway.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace wwd {

namespace {

struct Overlaps {
    double pa;
    double pb;
};

Overlaps path_overlaps(const Ket& chi_a, const Ket& chi_b, const Ket& v) {
    return {std::norm(inner(chi_a, v)), std::norm(inner(chi_b, v))};
}

double guess_chance(Overlaps o) { return std::max(o.pa, o.pb) / (o.pa + o.pb); }

template <typename WeightFn>
LikelihoodReport likelihood_impl(const WwdPair& wwd, const MeasurementBasis& basis, WeightFn&& weight_of) {
    if (basis.dim() != kDetectorDim) {
        throw std::invalid_argument("likelihood: readout basis must live in the detector space");
    }
    const Ket chi_a = wwd.chi_a();
    const Ket chi_b = wwd.chi_b();

    LikelihoodReport report;
    double total_weight = 0.0;
    double l = 0.0;
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const double w = weight_of(basis[j]);
        total_weight += w;
        if (w < kZeroWeight) continue;
        const Overlaps o = path_overlaps(chi_a, chi_b, basis[j]);
        // The detector state lies in span{chi_a, chi_b}, so a readout vector
        // orthogonal to both can only carry rounding-level weight.
        if (o.pa + o.pb < kZeroWeight) continue;
        const double lj = guess_chance(o);
        report.per_outcome.push_back({j, lj, w});
        l += lj * w;
    }
    if (total_weight < 1.0 - kBasisCompleteness) {
        throw IncompleteBasis("likelihood: readout weights sum to " + std::to_string(total_weight) +
                              ", basis does not span the detector state");
    }
    report.total_l = l;
    report.d_value = 2.0 * l - 1.0;
    return report;
}

}  // namespace

double visibility(const WwdPair& wwd) { return std::abs(std::conj(wwd.alpha_a()) * wwd.alpha_b()); }

double estimate_visibility_from_pattern(const WwdPair& wwd, int grid_size) {
    if (grid_size < 8) {
        throw std::invalid_argument("estimate_visibility_from_pattern: grid_size must be at least 8");
    }
    double p_max = 0.0;
    double p_min = 1.0;
    for (int k = 0; k < grid_size; ++k) {
        const PhaseShift ps(2.0 * std::numbers::pi * k / grid_size);
        const double p = quanton_probability(wwd, ps, QuantonOutcome::a);
        p_max = std::max(p_max, p);
        p_min = std::min(p_min, p);
    }
    return (p_max - p_min) / (p_max + p_min);
}

double outcome_likelihood(const WwdPair& wwd, const Ket& outcome_vec) {
    const Overlaps o = path_overlaps(wwd.chi_a(), wwd.chi_b(), outcome_vec);
    if (o.pa < kZeroWeight && o.pb < kZeroWeight) {
        throw UndefinedOutcome("outcome_likelihood: readout vector is orthogonal to both detector states");
    }
    return guess_chance(o);
}

LikelihoodReport likelihood(const WwdPair& wwd, const MeasurementBasis& basis, const DensityOperator& detector) {
    if (detector.dim() != kDetectorDim) {
        throw std::invalid_argument("likelihood: detector state must have dimension 3");
    }
    return likelihood_impl(wwd, basis, [&](const Ket& v) { return detector.weight(v); });
}

LikelihoodReport likelihood(const WwdPair& wwd, const MeasurementBasis& basis, const Ket& detector) {
    if (detector.dim() != kDetectorDim) {
        throw std::invalid_argument("likelihood: detector state must have dimension 3");
    }
    return likelihood_impl(wwd, basis, [&](const Ket& v) { return std::norm(inner(v, detector)); });
}

double distinguishability_in_basis(const WwdPair& wwd, const MeasurementBasis& basis, const Ket& detector) {
    return distinguishability_in_basis(wwd, basis.vectors(), detector);
}

double distinguishability_in_basis(const WwdPair& wwd, std::span<const Ket> basis, const Ket& detector) {
    const Ket chi_a = wwd.chi_a();
    const Ket chi_b = wwd.chi_b();
    double l = 0.0;
    for (const Ket& v : basis) {
        const double w = std::norm(inner(v, detector));
        if (w < kZeroWeight) continue;
        const Overlaps o = path_overlaps(chi_a, chi_b, v);
        if (o.pa + o.pb < kZeroWeight) continue;
        l += guess_chance(o) * w;
    }
    return 2.0 * l - 1.0;
}

Operator path_difference_operator(const WwdPair& wwd) {
    return Operator::projector(wwd.chi_a()) - Operator::projector(wwd.chi_b());
}

MeasurementBasis natural_basis() { return MeasurementBasis::standard(kDetectorDim); }

MeasurementBasis englert_basis(const WwdPair& wwd) {
    const Operator rho = path_difference_operator(wwd);
    if (rho.max_abs_diff(Operator(kDetectorDim)) < kHermitianTolerance) {
        return natural_basis();
    }
    return eig_hermitian(rho).eigenvectors;
}

double englert_distinguishability(const WwdPair& wwd) {
    const double overlap2 = std::norm(inner(wwd.chi_a(), wwd.chi_b()));
    return std::sqrt(std::max(0.0, 1.0 - overlap2));
}

double duality_residual(double d, double v) { return d * d + v * v - 1.0; }

}  // namespace wwd
