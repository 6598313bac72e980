#include "wwd/optimizer.hpp"

#include "wwd/whichway.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

namespace wwd {

void ScanConfig::validate() const {
    if (visibilities.empty()) {
        throw std::invalid_argument("scan: at least one visibility is required");
    }
    for (double v : visibilities) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("scan: visibility " + std::to_string(v) + " outside [0, 1]");
        }
    }
    if (delta_steps <= 0) {
        throw std::invalid_argument("scan: delta_steps must be positive");
    }
    if (samples <= 0) {
        throw std::invalid_argument("scan: samples must be positive");
    }
}

namespace {

using Columns = std::array<Ket, kDetectorDim>;

Columns columns_of(const MeasurementBasis& b) {
    Columns c;
    for (std::size_t i = 0; i < kDetectorDim; ++i) c[i] = b[i];
    return c;
}

double score(const WwdPair& wwd, const Columns& cols, const Ket& detector) {
    return distinguishability_in_basis(wwd, std::span<const Ket>(cols), detector);
}

// Rounding from many accepted rotations accumulates; one Gram-Schmidt pass
// keeps the columns orthonormal to machine precision.
void reorthonormalize(Columns& cols) {
    for (std::size_t k = 0; k < cols.size(); ++k) {
        for (std::size_t j = 0; j < k; ++j) cols[k] -= inner(cols[j], cols[k]) * cols[j];
        cols[k] = cols[k].normalized();
    }
}

// Rotation in the plane of columns p and q; `imaginary` selects the
// generator i(|p><q| + |q><p|) instead of the real one. Exactly unitary.
void givens(Columns& cols, std::size_t p, std::size_t q, bool imaginary, double angle) {
    const double c = std::cos(angle);
    const Complex s = imaginary ? Complex(0.0, std::sin(angle)) : Complex(std::sin(angle));
    const Ket vp = cols[p];
    const Ket vq = cols[q];
    cols[p] = c * vp + s * vq;
    cols[q] = -std::conj(s) * vp + c * vq;
}

// Compass search over the six Givens generators that span the tangent space
// of the flag manifold U(3)/U(1)^3. The step doubles after an improving sweep
// and halves after a failed one. Deterministic.
double polish(const WwdPair& wwd, const Ket& detector, const SearchOptions& opt, Columns& cols, double d) {
    constexpr std::array<std::pair<std::size_t, std::size_t>, 3> kPlanes{{{0, 1}, {0, 2}, {1, 2}}};
    double step = opt.polish_initial_step;
    while (step > opt.polish_final_step) {
        bool improved = false;
        for (const auto& [p, q] : kPlanes)
            for (bool imaginary : {false, true})
                for (double dir : {1.0, -1.0}) {
                    Columns trial = cols;
                    givens(trial, p, q, imaginary, dir * step);
                    reorthonormalize(trial);
                    const double t = score(wwd, trial, detector);
                    if (t > d) {
                        d = t;
                        cols = std::move(trial);
                        improved = true;
                    }
                }
        step = improved ? std::min(2.0 * step, opt.polish_initial_step) : 0.5 * step;
    }
    return d;
}

}  // namespace

OptimizationResult optimize_distinguishability(const WwdPair& wwd, PhaseShift ps, QuantonOutcome out, int samples,
                                               std::mt19937_64& rng, const SearchOptions& options) {
    if (samples < 0) {
        throw std::invalid_argument("optimize_distinguishability: samples must be non-negative");
    }
    const Ket detector = detector_state_quanton_first(wwd, ps, out).state;

    // The two fixed candidates are always polished; a random basis is
    // polished when it beats every earlier random basis. Which bases qualify
    // depends only on the sample prefix, so the result cannot decrease when
    // more samples are drawn from the same stream.
    double best_d = -1.0;
    Columns best{};
    auto refine = [&](const MeasurementBasis& candidate, double d) {
        Columns cols = columns_of(candidate);
        const double polished = options.polish ? polish(wwd, detector, options, cols, d) : d;
        if (polished > best_d) {
            best_d = polished;
            best = std::move(cols);
        }
    };

    for (const MeasurementBasis& fixed : {natural_basis(), englert_basis(wwd)})
        refine(fixed, distinguishability_in_basis(wwd, fixed, detector));

    double random_record = -1.0;
    for (int i = 0; i < samples; ++i) {
        const MeasurementBasis candidate = haar_random_basis(rng, kDetectorDim);
        const double d = distinguishability_in_basis(wwd, candidate, detector);
        if (d <= random_record) continue;
        random_record = d;
        refine(candidate, d);
    }
    return {best_d, MeasurementBasis(std::vector<Ket>(best.begin(), best.end()))};
}

double delta_grid_point(int k, int steps) { return 2.0 * std::numbers::pi * k / steps; }

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t cell_seed(std::uint64_t master, std::size_t v_index, std::size_t delta_index) noexcept {
    return mix64(mix64(master ^ mix64(v_index + 1)) ^ (delta_index + 1));
}

ScanRecord evaluate_cell(double visibility_value, PhaseShift ps, QuantonOutcome out, int samples, std::uint64_t seed,
                         const SearchOptions& search) {
    const WwdPair wwd = symmetric_wwd(visibility_value);

    ScanRecord rec;
    rec.delta = ps.delta();
    rec.visibility = visibility_value;
    rec.sigma = sign(out);
    rec.outcome_probability = quanton_probability(wwd, ps, out);
    rec.d_englert_bound = englert_distinguishability(wwd);
    if (rec.outcome_probability < kZeroProbability) return rec;

    const Ket detector = detector_state_quanton_first(wwd, ps, out).state;
    rec.d_natural_line = distinguishability_in_basis(wwd, natural_basis(), detector);
    rec.d_englert_line = distinguishability_in_basis(wwd, englert_basis(wwd), detector);

    std::mt19937_64 rng(seed);
    rec.d_opt = optimize_distinguishability(wwd, ps, out, samples, rng, search).d_opt;
    return rec;
}

std::vector<ScanRecord> run_scan(const ScanConfig& config) {
    config.validate();
    const std::size_t n_v = config.visibilities.size();
    const std::size_t n_d = static_cast<std::size_t>(config.delta_steps);
    const std::size_t total = n_v * n_d;

    std::vector<ScanRecord> records(total);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t cell = next++; cell < total; cell = next++) {
            const std::size_t vi = cell / n_d;
            const std::size_t di = cell % n_d;
            try {
                records[cell] = evaluate_cell(config.visibilities[vi],
                                              PhaseShift(delta_grid_point(static_cast<int>(di), config.delta_steps)),
                                              config.sigma, config.samples,
                                              cell_seed(config.master_seed, vi, di), config.search);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = total;
            }
        }
    };

    unsigned n_threads = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, total));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return records;
}

}  // namespace wwd
