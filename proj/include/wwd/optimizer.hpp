// optimizer.hpp
// Monte Carlo search for the readout basis that maximizes the path
// likelihood when the quanton is measured first, and the (V, delta) scan
// built on top of it.

#pragma once

#include "wwd/hilbert.hpp"
#include "wwd/interferometer.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace wwd {

struct SearchOptions {
    /// Local compass search on top of the random candidates.
    bool polish = true;
    double polish_initial_step = 0.2;
    double polish_final_step = 1e-9;
};

struct ScanConfig {
    std::vector<double> visibilities{0.5, 0.9, 0.97};
    int delta_steps = 50;
    int samples = 10000;
    QuantonOutcome sigma = QuantonOutcome::a;
    std::uint64_t master_seed = 42;
    /// Worker threads; 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
    SearchOptions search{};

    /// Throws std::invalid_argument on an unusable configuration.
    void validate() const;
};

/// One evaluated (V, delta) cell. The d_* fields are absent when the quanton
/// outcome has zero probability and no detector state exists.
struct ScanRecord {
    double delta = 0.0;
    double visibility = 0.0;
    int sigma = 1;
    double outcome_probability = 0.0;
    std::optional<double> d_opt;
    std::optional<double> d_englert_line;
    std::optional<double> d_natural_line;
    double d_englert_bound = 0.0;

    bool operator==(const ScanRecord&) const = default;
};

struct OptimizationResult {
    double d_opt;
    MeasurementBasis best_basis;
};

/// Best 2L - 1 over the natural basis, the Englert basis and `samples`
/// Haar-random bases drawn from `rng`, in that order. With polishing enabled,
/// the two fixed bases and every random basis that beats all earlier random
/// ones are refined by a deterministic Givens-rotation compass search. Never below any candidate;
/// non-decreasing in `samples` for a fixed stream. Throws
/// ZeroProbabilityOutcome if the outcome cannot occur.
OptimizationResult optimize_distinguishability(const WwdPair& wwd, PhaseShift ps, QuantonOutcome out, int samples,
                                               std::mt19937_64& rng, const SearchOptions& options = {});

/// 2 pi k / steps
double delta_grid_point(int k, int steps);

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of the random substream for one scan cell:
/// mix64(mix64(master ^ mix64(v_index + 1)) ^ (delta_index + 1)).
std::uint64_t cell_seed(std::uint64_t master, std::size_t v_index, std::size_t delta_index) noexcept;

/// Evaluates a single cell with its own substream seed.
ScanRecord evaluate_cell(double visibility, PhaseShift ps, QuantonOutcome out, int samples, std::uint64_t seed,
                         const SearchOptions& search = {});

/// All visibilities x delta grid, ordered by (visibility index, delta index).
/// Output is identical for any thread count.
std::vector<ScanRecord> run_scan(const ScanConfig& config);

}  // namespace wwd
