// whichway.hpp
// Which-way information: guessing likelihoods, distinguishability and the
// visibility/distinguishability duality residual.

#pragma once

#include "wwd/hilbert.hpp"
#include "wwd/interferometer.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace wwd {

/// Readout outcomes whose probability falls below this are skipped.
inline constexpr double kZeroWeight = 1e-14;
/// Allowed shortfall of the summed readout weights before a basis is
/// considered incomplete for the detector state.
inline constexpr double kBasisCompleteness = 1e-10;

/// Both path overlaps of a readout vector vanish; the guessing chance is 0/0.
class UndefinedOutcome : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The readout basis does not cover the support of the detector state.
class IncompleteBasis : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct OutcomeLikelihood {
    std::size_t index;  // position in the readout basis
    double l_j;         // chance of guessing the path given this readout
    double weight;      // <chi_j|rho_D|chi_j>
};

struct LikelihoodReport {
    std::vector<OutcomeLikelihood> per_outcome;  // zero-weight outcomes omitted
    double total_l = 0.5;
    double d_value = 0.0;  // 2 L - 1
};

/// |alpha_a^* alpha_b|
double visibility(const WwdPair& wwd);

/// Fringe contrast (P_max - P_min) / (P_max + P_min) of P_a(delta) sampled on
/// grid_size uniform phases in [0, 2pi). Requires grid_size >= 8.
double estimate_visibility_from_pattern(const WwdPair& wwd, int grid_size);

/// max(|<chi_a|v>|^2, |<chi_b|v>|^2) / (|<chi_a|v>|^2 + |<chi_b|v>|^2).
/// Throws UndefinedOutcome if both overlaps are below kZeroWeight.
double outcome_likelihood(const WwdPair& wwd, const Ket& outcome_vec);

/// L = sum_j L_j <chi_j|rho_D|chi_j>. Throws IncompleteBasis if the readout
/// weights fall short of 1 by more than kBasisCompleteness.
LikelihoodReport likelihood(const WwdPair& wwd, const MeasurementBasis& basis, const DensityOperator& detector);

/// Same as above for a pure detector state, without forming the projector.
LikelihoodReport likelihood(const WwdPair& wwd, const MeasurementBasis& basis, const Ket& detector);

/// 2 L - 1 for a pure detector state; the allocation-free path used by the
/// basis search.
double distinguishability_in_basis(const WwdPair& wwd, const MeasurementBasis& basis, const Ket& detector);
/// Unchecked variant for callers that maintain orthonormality themselves.
double distinguishability_in_basis(const WwdPair& wwd, std::span<const Ket> basis, const Ket& detector);

/// |chi_a><chi_a| - |chi_b><chi_b|
Operator path_difference_operator(const WwdPair& wwd);

/// Eigenbasis of |chi_a><chi_a| - |chi_b><chi_b| (eigenvalues descending).
/// When that operator vanishes (identical detector states) the natural basis
/// is returned.
MeasurementBasis englert_basis(const WwdPair& wwd);

/// The natural basis {|0>, |+>, |->}.
MeasurementBasis natural_basis();

/// sqrt(1 - |<chi_a|chi_b>|^2)
double englert_distinguishability(const WwdPair& wwd);

/// D^2 + V^2 - 1; positive values exceed the duality bound.
double duality_residual(double d, double v);

}  // namespace wwd
