#include "wwd/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace wwd {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                    " vs " + std::to_string(b) + ")");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Ket

namespace {

std::size_t checked_dim(std::size_t dim) {
    if (dim > kMaxKetDim) {
        throw std::invalid_argument("Ket: dimension " + std::to_string(dim) + " exceeds " +
                                    std::to_string(kMaxKetDim));
    }
    return dim;
}

}  // namespace

Ket::Ket(std::size_t dim) : dim_(checked_dim(dim)) {}

Ket::Ket(std::initializer_list<Complex> amps) : dim_(checked_dim(amps.size())) {
    std::copy(amps.begin(), amps.end(), amps_.begin());
}

Ket::Ket(std::vector<Complex> amps) : dim_(checked_dim(amps.size())) {
    std::copy(amps.begin(), amps.end(), amps_.begin());
}

bool Ket::operator==(const Ket& other) const noexcept {
    return dim_ == other.dim_ && std::equal(amps_.begin(), amps_.begin() + dim_, other.amps_.begin());
}

Ket Ket::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw std::out_of_range("Ket::basis: index out of range");
    }
    Ket k(dim);
    k.amps_[index] = 1.0;
    return k;
}

double Ket::norm_squared() const noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) s += std::norm(amps_[i]);
    return s;
}

Ket Ket::normalized() const {
    const double n2 = norm_squared();
    if (!(n2 > 0.0) || !std::isfinite(n2)) {
        throw std::invalid_argument("Ket::normalized: vector has zero or non-finite norm");
    }
    Ket out(*this);
    const double inv = 1.0 / std::sqrt(n2);
    for (std::size_t i = 0; i < dim_; ++i) out.amps_[i] *= inv;
    return out;
}

Ket& Ket::operator+=(const Ket& other) {
    require_same_dim(dim(), other.dim(), "Ket::operator+=");
    for (std::size_t i = 0; i < dim_; ++i) amps_[i] += other.amps_[i];
    return *this;
}

Ket& Ket::operator-=(const Ket& other) {
    require_same_dim(dim(), other.dim(), "Ket::operator-=");
    for (std::size_t i = 0; i < dim_; ++i) amps_[i] -= other.amps_[i];
    return *this;
}

Ket& Ket::operator*=(Complex factor) {
    for (std::size_t i = 0; i < dim_; ++i) amps_[i] *= factor;
    return *this;
}

Complex inner(const Ket& a, const Ket& b) {
    require_same_dim(a.dim(), b.dim(), "inner");
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

Ket tensor(const Ket& a, const Ket& b) {
    Ket out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
    return out;
}

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

Operator::Operator(std::size_t dim, std::vector<Complex> row_major) : dim_(dim), entries_(std::move(row_major)) {
    if (entries_.size() != dim * dim) {
        throw std::invalid_argument("Operator: expected dim*dim entries");
    }
}

Operator Operator::identity(std::size_t dim) {
    Operator m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

Operator Operator::diagonal(std::span<const double> values) {
    Operator m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

Operator Operator::diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
}

Operator Operator::outer(const Ket& a, const Ket& b) {
    require_same_dim(a.dim(), b.dim(), "Operator::outer");
    Operator m(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) m(i, j) = a[i] * std::conj(b[j]);
    return m;
}

Complex Operator::trace() const noexcept {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

Operator Operator::adjoint() const {
    Operator m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
}

bool Operator::is_hermitian(double tol) const noexcept {
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
}

double Operator::max_abs_diff(const Operator& other) const {
    require_same_dim(dim_, other.dim_, "Operator::max_abs_diff");
    double worst = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
    return worst;
}

Ket Operator::apply(const Ket& k) const {
    require_same_dim(dim_, k.dim(), "Operator::apply");
    Ket out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) s += (*this)(i, j) * k[j];
        out[i] = s;
    }
    return out;
}

Complex Operator::matrix_element(const Ket& a, const Ket& b) const { return inner(a, apply(b)); }

double Operator::expectation(const Ket& k) const { return matrix_element(k, k).real(); }

Operator& Operator::operator+=(const Operator& other) {
    require_same_dim(dim_, other.dim_, "Operator::operator+=");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

Operator& Operator::operator-=(const Operator& other) {
    require_same_dim(dim_, other.dim_, "Operator::operator-=");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

Operator& Operator::operator*=(Complex factor) {
    for (auto& e : entries_) e *= factor;
    return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
    require_same_dim(a.dim(), b.dim(), "Operator::operator*");
    const std::size_t n = a.dim();
    Operator m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            for (std::size_t j = 0; j < n; ++j) m(i, j) += aik * b(k, j);
        }
    return m;
}

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(Operator rho) : rho_(std::move(rho)) {
    if (rho_.dim() == 0) {
        throw std::invalid_argument("DensityOperator: empty operator");
    }
    if (!rho_.is_hermitian()) {
        throw std::invalid_argument("DensityOperator: operator is not Hermitian");
    }
    const Complex tr = rho_.trace();
    if (std::abs(tr - 1.0) > kNormTolerance) {
        throw std::invalid_argument("DensityOperator: trace differs from 1");
    }
    const auto eig = eig_hermitian(rho_);
    if (eig.eigenvalues.back() < -kNormTolerance) {
        throw std::invalid_argument("DensityOperator: operator is not positive semi-definite");
    }
}

DensityOperator DensityOperator::pure(const Ket& k) {
    if (std::abs(k.norm_squared() - 1.0) > kNormTolerance) {
        throw std::invalid_argument("DensityOperator::pure: ket is not normalized");
    }
    return DensityOperator(Operator::projector(k));
}

// ---------------------------------------------------------------------------
// MeasurementBasis

double MeasurementBasis::orthonormality_error(std::span<const Ket> vectors) {
    double worst = 0.0;
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = i; j < vectors.size(); ++j) {
            const Complex g = inner(vectors[i], vectors[j]);
            worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

MeasurementBasis::MeasurementBasis(std::vector<Ket> vectors) : vectors_(std::move(vectors)) {
    if (vectors_.empty()) {
        throw std::invalid_argument("MeasurementBasis: no vectors");
    }
    const std::size_t d = vectors_.front().dim();
    for (const auto& v : vectors_) require_same_dim(d, v.dim(), "MeasurementBasis");
    if (vectors_.size() > d) {
        throw std::invalid_argument("MeasurementBasis: more vectors than dimensions");
    }
    if (orthonormality_error(vectors_) > kOrthonormalTolerance) {
        throw std::invalid_argument("MeasurementBasis: vectors are not orthonormal");
    }
}

MeasurementBasis MeasurementBasis::standard(std::size_t dim) {
    std::vector<Ket> v;
    v.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) v.push_back(Ket::basis(dim, i));
    return MeasurementBasis(std::move(v));
}

// ---------------------------------------------------------------------------
// Eigendecomposition

EigenDecomposition eig_hermitian(const Operator& m) {
    if (!m.is_hermitian()) {
        throw std::invalid_argument("eig_hermitian: operator is not Hermitian");
    }
    const std::size_t n = m.dim();
    if (n == 0) {
        throw std::invalid_argument("eig_hermitian: empty operator");
    }

    Operator a = m;
    // Symmetrize so that rounding in the input cannot leak into the sweep.
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }
    Operator v = Operator::identity(n);

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));

    constexpr int kMaxSweeps = 64;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (off == 0.0 || std::sqrt(off) <= 1e-300 + 1e-17 * scale) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag == 0.0) continue;
                const Complex phase = a(p, q) / mag;  // a_pq = |a_pq| e^{i phi}

                // Real Jacobi rotation on the phase-adjusted 2x2 block.
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // J = diag(1, e^{-i phi}) R, columns p and q of the identity otherwise.
                const Complex jpp = c;
                const Complex jpq = s;
                const Complex jqp = -s * std::conj(phase);
                const Complex jqq = c * std::conj(phase);

                // a <- a J (columns p, q)
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                // a <- J^H a (rows p, q)
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    std::vector<double> values;
    std::vector<Ket> vectors;
    values.reserve(n);
    vectors.reserve(n);
    for (std::size_t idx : order) {
        values.push_back(a(idx, idx).real());
        Ket col(n);
        for (std::size_t k = 0; k < n; ++k) col[k] = v(k, idx);
        vectors.push_back(std::move(col));
    }
    return {std::move(values), MeasurementBasis(std::move(vectors))};
}

double trace_norm_half(const Operator& m) {
    const auto eig = eig_hermitian(m);
    double s = 0.0;
    for (double lambda : eig.eigenvalues) s += std::abs(lambda);
    return 0.5 * s;
}

// ---------------------------------------------------------------------------
// Partial trace

DensityOperator partial_trace_quanton(const Ket& joint) {
    if (joint.dim() != 6) {
        throw std::invalid_argument("partial_trace_quanton: joint ket must have dimension 6");
    }
    if (std::abs(joint.norm_squared() - 1.0) > kNormTolerance) {
        throw std::invalid_argument("partial_trace_quanton: joint ket is not normalized");
    }
    constexpr std::size_t kQuanton = 2;
    constexpr std::size_t kDetector = 3;
    Operator rho(kDetector);
    for (std::size_t q = 0; q < kQuanton; ++q)
        for (std::size_t i = 0; i < kDetector; ++i)
            for (std::size_t j = 0; j < kDetector; ++j)
                rho(i, j) += joint[kDetector * q + i] * std::conj(joint[kDetector * q + j]);
    return DensityOperator(std::move(rho));
}

// ---------------------------------------------------------------------------
// Haar sampling

MeasurementBasis haar_random_basis(std::mt19937_64& rng, std::size_t dim) {
    if (dim == 0) {
        throw std::invalid_argument("haar_random_basis: dim must be positive");
    }
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<Ket> cols(dim, Ket(dim));
    for (auto& c : cols)
        for (std::size_t i = 0; i < dim; ++i) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            c[i] = Complex(re, im);
        }

    // Modified Gram-Schmidt. R_kk comes out real and positive, which is the
    // phase convention that makes Q Haar distributed.
    for (std::size_t k = 0; k < dim; ++k) {
        for (std::size_t j = 0; j < k; ++j) {
            const Complex r = inner(cols[j], cols[k]);
            for (std::size_t i = 0; i < dim; ++i) cols[k][i] -= r * cols[j][i];
        }
        cols[k] = cols[k].normalized();
    }
    // Second pass restores orthogonality lost to cancellation.
    for (std::size_t k = 0; k < dim; ++k) {
        for (std::size_t j = 0; j < k; ++j) {
            const Complex r = inner(cols[j], cols[k]);
            for (std::size_t i = 0; i < dim; ++i) cols[k][i] -= r * cols[j][i];
        }
        cols[k] = cols[k].normalized();
    }
    return MeasurementBasis(std::move(cols));
}

}  // namespace wwd
