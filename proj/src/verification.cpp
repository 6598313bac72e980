#include "wwd/verification.hpp"

#include "wwd/hilbert.hpp"
#include "wwd/interferometer.hpp"
#include "wwd/optimizer.hpp"
#include "wwd/whichway.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace wwd {

namespace {

constexpr double kPi = std::numbers::pi;

class Suite {
public:
    explicit Suite(const VerifyOptions& opts) : opts_(opts) {}

    void at_most(std::string name, double residual, double tol) { add(std::move(name), residual, tol, false, false); }

    void at_least(std::string name, double value, double bound) { add(std::move(name), value, bound, true, false); }

    void statistical(std::string name, double residual, double tol) {
        add(std::move(name), residual, opts_.monte_carlo_tolerance.value_or(tol), false, true);
    }

    std::vector<CheckResult> take() { return std::move(results_); }

private:
    void add(std::string name, double residual, double threshold, bool lower_bound, bool mc) {
        const bool ok = std::isfinite(residual) && (lower_bound ? residual >= threshold : residual <= threshold);
        results_.push_back({std::move(name), residual, threshold, lower_bound, mc, ok});
    }

    const VerifyOptions& opts_;
    std::vector<CheckResult> results_;
};

Ket random_ket(std::mt19937_64& rng, std::size_t dim) {
    std::normal_distribution<double> g;
    Ket k(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const double re = g(rng);
        const double im = g(rng);
        k[i] = Complex(re, im);
    }
    return k;
}

Operator random_hermitian(std::mt19937_64& rng, std::size_t dim) {
    std::normal_distribution<double> g;
    Operator m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = g(rng);
        for (std::size_t j = i + 1; j < dim; ++j) {
            const double re = g(rng);
            const double im = g(rng);
            m(i, j) = Complex(re, im);
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

std::vector<double> unit_grid(int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(static_cast<double>(i) / (n - 1));
    return v;
}

void hilbert_checks(Suite& s, std::mt19937_64& rng) {
    double norm_err = 0.0;
    for (int i = 0; i < 1000; ++i) {
        norm_err = std::max(norm_err, std::abs(random_ket(rng, 1 + i % 6).normalized().norm_squared() - 1.0));
    }
    s.at_most("hilbert: normalized ket has unit norm", norm_err, 1e-12);

    double recon_err = 0.0;
    for (int i = 0; i < 500; ++i) {
        const Operator m = random_hermitian(rng, 1 + i % 6);
        const auto eig = eig_hermitian(m);
        Operator r(m.dim());
        for (std::size_t k = 0; k < m.dim(); ++k)
            r += Complex(eig.eigenvalues[k]) * Operator::projector(eig.eigenvectors[k]);
        recon_err = std::max(recon_err, r.max_abs_diff(m));
    }
    s.at_most("hilbert: eigen reconstruction sum lambda_k |v_k><v_k|", recon_err, 1e-9);

    double trace_err = 0.0;
    for (int i = 0; i < 500; ++i) {
        const auto rho = partial_trace_quanton(random_ket(rng, kJointDim).normalized());
        trace_err = std::max(trace_err, std::abs(rho.matrix().trace() - 1.0));
    }
    s.at_most("hilbert: partial trace preserves trace", trace_err, 1e-12);

    double ortho_err = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto b = haar_random_basis(rng, kDetectorDim);
        ortho_err = std::max(ortho_err, MeasurementBasis::orthonormality_error(b.vectors()));
    }
    s.at_most("hilbert: Haar bases orthonormal (1000 draws)", ortho_err, 1e-10);

    double tn_err = 0.0;
    for (double v : unit_grid(21)) {
        const WwdPair w = symmetric_wwd(v);
        const double expected = std::sqrt(1.0 - std::norm(inner(w.chi_a(), w.chi_b())));
        tn_err = std::max(tn_err, std::abs(trace_norm_half(path_difference_operator(w)) - expected));
    }
    s.at_most("hilbert: half trace norm of path difference = sqrt(1 - |<chi_a|chi_b>|^2)", tn_err, 1e-10);

    const Ket fixed = Ket{1.0, Complex(0.0, 1.0), -1.0}.normalized();
    double mean = 0.0;
    constexpr int kDraws = 10000;
    for (int i = 0; i < kDraws; ++i) mean += std::norm(inner(haar_random_basis(rng, kDetectorDim)[0], fixed));
    mean /= kDraws;
    s.statistical("hilbert: Haar mean overlap |<e_1|u>|^2 = 1/3", std::abs(mean - 1.0 / 3.0), 0.02);
}

void interferometer_checks(Suite& s) {
    double sum_err = 0.0;
    double mix_err = 0.0;
    for (double v : unit_grid(21)) {
        const WwdPair w = symmetric_wwd(v);
        const Operator traced = detector_state_wwd_first(w).matrix();
        for (int k = 0; k < 50; ++k) {
            const PhaseShift ps(delta_grid_point(k, 50));
            const double pa = quanton_probability(w, ps, QuantonOutcome::a);
            const double pb = quanton_probability(w, ps, QuantonOutcome::b);
            sum_err = std::max(sum_err, std::abs(pa + pb - 1.0));

            Operator mix(kDetectorDim);
            for (QuantonOutcome out : {QuantonOutcome::a, QuantonOutcome::b}) {
                try {
                    const auto proj = detector_state_quanton_first(w, ps, out);
                    mix += Complex(proj.probability) * Operator::projector(proj.state);
                } catch (const ZeroProbabilityOutcome&) {
                }
            }
            mix_err = std::max(mix_err, mix.max_abs_diff(traced));
        }
    }
    s.at_most("interferometer: P(+1) + P(-1) = 1 on 21x50 grid", sum_err, 1e-12);
    s.at_most("interferometer: probability-weighted mixture = traced detector state", mix_err, 1e-12);

    double comm_err = 0.0;
    for (double v : unit_grid(11)) {
        const WwdPair w = symmetric_wwd(v);
        for (int k = 0; k < 50; ++k) {
            const PhaseShift ps(delta_grid_point(k, 50));
            const Ket split = hadamard_on_quanton(Ket::basis(kQuantonDim, 0));
            const Ket ps_first = record_path(phase_shift_on_quanton(split, ps), w);
            const Ket wwd_first = phase_shift_on_quanton(record_path(split, w), ps);
            comm_err = std::max(comm_err, (ps_first - wwd_first).norm_squared());
        }
    }
    s.at_most("interferometer: phase shifter commutes with WWD", std::sqrt(comm_err), 1e-12);

    const Ket out = final_joint_state(symmetric_wwd(1.0), PhaseShift(0.0));
    s.at_most("interferometer: BM(BS(|psi_a>)) = |psi_a> for empty WWD",
              std::sqrt((out - tensor(Ket::basis(2, 0), Ket::basis(3, 0))).norm_squared()), 0.0);
}

void whichway_checks(Suite& s, std::mt19937_64& rng) {
    double range_violation = 0.0;
    double completion_err = 0.0;
    for (double v : unit_grid(11)) {
        const WwdPair w = symmetric_wwd(v);
        const DensityOperator rho = detector_state_wwd_first(w);
        for (int i = 0; i < 100; ++i) {
            const auto rep = likelihood(w, haar_random_basis(rng, kDetectorDim), rho);
            for (const auto& o : rep.per_outcome)
                range_violation = std::max({range_violation, 0.5 - o.l_j, o.l_j - 1.0});
            range_violation = std::max({range_violation, 0.5 - rep.total_l, rep.total_l - 1.0, -rep.d_value,
                                        rep.d_value - 1.0});
        }
        if (v < 1.0) {
            // Orthonormal basis of span{chi_a, chi_b} rotated by a random
            // unitary, plus the orthogonal complement.
            const Ket e1 = w.chi_a().normalized();
            const Ket e2 = (w.chi_b() - inner(e1, w.chi_b()) * e1).normalized();
            std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
            const double t = angle(rng);
            const double phi = angle(rng);
            const Ket u1 = std::cos(t) * e1 + std::polar(std::sin(t), phi) * e2;
            const Ket u2 = -std::polar(std::sin(t), -phi) * e1 + std::cos(t) * e2;
            Ket c(kDetectorDim);
            for (std::size_t i = 0; i < kDetectorDim; ++i) {
                Ket trial = Ket::basis(kDetectorDim, i);
                trial -= inner(u1, trial) * u1;
                trial -= inner(u2, trial) * u2;
                if (trial.norm_squared() > c.norm_squared()) c = trial;
            }
            c = c.normalized();
            const double l2 = likelihood(w, MeasurementBasis({u1, u2}), rho).total_l;
            const double l3 = likelihood(w, MeasurementBasis({u1, u2, c}), rho).total_l;
            completion_err = std::max(completion_err, std::abs(l3 - l2));
        }
    }
    s.at_most("whichway: L_j, L in [1/2, 1] and D in [0, 1]", range_violation, 1e-12);
    s.at_most("whichway: completing a basis outside span{chi_a, chi_b} leaves L unchanged", completion_err, 1e-12);

    double excess = -1.0;
    for (double v : {0.25, 0.5, 0.75, 0.9}) {
        const WwdPair w = symmetric_wwd(v);
        const DensityOperator rho = detector_state_wwd_first(w);
        const double d_englert = englert_distinguishability(w);
        for (int i = 0; i < 1000; ++i) {
            const double d = likelihood(w, haar_random_basis(rng, kDetectorDim), rho).d_value;
            excess = std::max(excess, d - d_englert);
        }
    }
    s.statistical("whichway: no random basis beats Englert when the WWD is read first", excess, 1e-9);

    double anchor_err = 0.0;
    for (double v : unit_grid(21)) {
        if (v == 1.0) continue;
        const WwdPair w = symmetric_wwd(v);
        const auto proj = detector_state_quanton_first(w, PhaseShift(0.0), QuantonOutcome::a);
        const double d = likelihood(w, englert_basis(w), proj.state).d_value;
        anchor_err = std::max(anchor_err, std::abs(d - std::sqrt(1.0 - v * v)));
    }
    s.at_most("whichway: Englert basis at delta = 0 gives sqrt(1 - V^2)", anchor_err, 1e-10);

    double natural_err = 0.0;
    for (double v : {0.5, 0.9, 0.97}) {
        const WwdPair w = symmetric_wwd(v);
        for (QuantonOutcome out : {QuantonOutcome::a, QuantonOutcome::b}) {
            const double sigma = sign(out);
            for (int k = 0; k < 50; ++k) {
                const PhaseShift ps(delta_grid_point(k, 50));
                const auto proj = detector_state_quanton_first(w, ps, out);
                const double d = likelihood(w, natural_basis(), proj.state).d_value;
                const double closed =
                    2.0 * (1.0 - v) / (2.0 * v * (1.0 + sigma * std::cos(ps.delta())) + 2.0 * (1.0 - v));
                natural_err = std::max(natural_err, std::abs(d - closed));
            }
        }
    }
    s.at_most("whichway: natural-basis D matches closed form", natural_err, 1e-12);

    double saturation_err = 0.0;
    for (double v : unit_grid(21)) {
        saturation_err = std::max(saturation_err,
                                  std::abs(duality_residual(englert_distinguishability(symmetric_wwd(v)), v)));
    }
    s.at_most("whichway: WWD read first saturates D^2 + V^2 = 1 (21 values)", saturation_err, 1e-12);
}

void optimizer_checks(Suite& s, const VerifyOptions& opts) {
    ScanConfig cfg;
    cfg.delta_steps = opts.delta_steps;
    cfg.samples = opts.samples;
    cfg.master_seed = opts.seed;
    cfg.threads = opts.threads;
    cfg.sigma = QuantonOutcome::a;
    const auto plus = run_scan(cfg);
    cfg.sigma = QuantonOutcome::b;
    const auto minus = run_scan(cfg);

    double dominance = 0.0;
    double below_bound = -1.0;
    for (const auto* scan : {&plus, &minus}) {
        for (const auto& r : *scan) {
            if (!r.d_opt) continue;
            dominance = std::max({dominance, *r.d_englert_line - *r.d_opt, *r.d_natural_line - *r.d_opt});
            below_bound = std::max(below_bound, r.d_englert_bound - *r.d_opt);
        }
    }
    s.at_most("optimizer: d_opt >= max(Englert line, natural line)", dominance, 0.0);
    s.statistical("optimizer: d_opt >= sqrt(1 - V^2) on every delta", below_bound, 1e-6);

    // The sigma = -1 curve is the sigma = +1 curve shifted by pi; requires an
    // even grid so that delta + pi lands on a grid point.
    if (opts.delta_steps % 2 == 0) {
        const std::size_t n = static_cast<std::size_t>(opts.delta_steps);
        double shift_err = 0.0;
        for (std::size_t vi = 0; vi < cfg.visibilities.size(); ++vi)
            for (std::size_t k = 0; k < n; ++k) {
                const auto& p = plus[vi * n + (k + n / 2) % n];
                const auto& m = minus[vi * n + k];
                if (p.d_opt && m.d_opt) shift_err = std::max(shift_err, std::abs(*p.d_opt - *m.d_opt));
            }
        s.statistical("optimizer: sigma = -1 curve equals sigma = +1 curve shifted by pi", shift_err, 5e-3);
    }

    const PhaseShift pi(kPi);
    const WwdPair w09 = symmetric_wwd(0.9);
    std::mt19937_64 rng(cell_seed(opts.seed, 0, 0));
    const double d_peak = optimize_distinguishability(w09, pi, QuantonOutcome::a, opts.samples, rng).d_opt;
    s.at_least("optimizer: duality residual at V = 0.9, delta = pi", duality_residual(d_peak, 0.9), 0.80);

    double decrease = 0.0;
    for (double v : {0.5, 0.9}) {
        const WwdPair w = symmetric_wwd(v);
        const PhaseShift ps(delta_grid_point(13, 50));
        double previous = -1.0;
        for (int n : {10, 100, 1000, 5000}) {
            std::mt19937_64 nested(opts.seed);
            const double d = optimize_distinguishability(w, ps, QuantonOutcome::a, n, nested).d_opt;
            decrease = std::max(decrease, previous - d);
            previous = d;
        }
    }
    s.at_most("optimizer: d_opt non-decreasing in samples (nested streams)", decrease, 0.0);
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
    Suite s(options);
    std::mt19937_64 rng(options.seed);
    hilbert_checks(s, rng);
    interferometer_checks(s);
    whichway_checks(s, rng);
    optimizer_checks(s, options);
    return s.take();
}

}  // namespace wwd
