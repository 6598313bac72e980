// oracles.hpp
// Independent reference computations used only by the tests. None of these
// call into the library's eigen solver, likelihood or optimizer code.

#pragma once

#include "wwd/hilbert.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace wwd::testing {

/// Eigenvalues of a 3x3 Hermitian matrix from its characteristic polynomial
/// (trigonometric solution of the depressed cubic), descending.
inline std::array<double, 3> hermitian3_eigenvalues(const Operator& m) {
    const double a = m(0, 0).real();
    const double b = m(1, 1).real();
    const double c = m(2, 2).real();
    const Complex d = m(0, 1);
    const Complex e = m(1, 2);
    const Complex f = m(0, 2);

    // lambda^3 - t lambda^2 + s lambda - det = 0
    const double t = a + b + c;
    const double s = a * b + b * c + a * c - std::norm(d) - std::norm(e) - std::norm(f);
    const double det = a * b * c + 2.0 * (d * e * std::conj(f)).real() - a * std::norm(e) - b * std::norm(f) -
                       c * std::norm(d);

    // lambda = x + t/3  ->  x^3 + p x + q = 0
    const double p = s - t * t / 3.0;
    const double q = -2.0 * t * t * t / 27.0 + t * s / 3.0 - det;
    std::array<double, 3> roots{};
    if (std::abs(p) < 1e-300) {
        const double x = std::cbrt(-q);
        roots = {x + t / 3.0, x + t / 3.0, x + t / 3.0};
    } else {
        const double r = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) roots[k] = r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) + t / 3.0;
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());
    return roots;
}

/// 2L - 1 for a pure detector state, summed straight from the definitions
/// L_j = max(p_a, p_b) / (p_a + p_b) and weight_j = |<chi_j|psi>|^2.
inline double direct_d_value(const Ket& chi_a, const Ket& chi_b, std::span<const Ket> basis, const Ket& psi) {
    double l = 0.0;
    for (const Ket& v : basis) {
        Complex oa = 0.0, ob = 0.0, op = 0.0;
        for (std::size_t i = 0; i < v.dim(); ++i) {
            oa += std::conj(chi_a[i]) * v[i];
            ob += std::conj(chi_b[i]) * v[i];
            op += std::conj(v[i]) * psi[i];
        }
        const double pa = std::norm(oa);
        const double pb = std::norm(ob);
        if (pa + pb == 0.0) continue;
        l += std::max(pa, pb) / (pa + pb) * std::norm(op);
    }
    return 2.0 * l - 1.0;
}

/// Natural-basis distinguishability of the quanton-first detector state for a
/// symmetric WWD, worked out by hand from the likelihood definition.
inline double natural_line_closed_form(double v, int sigma, double delta) {
    return 2.0 * (1.0 - v) / (2.0 * v * (1.0 + sigma * std::cos(delta)) + 2.0 * (1.0 - v));
}

}  // namespace wwd::testing
