// hilbert.hpp
// Small dense complex linear algebra for the quanton (dim 2), the which-way
// detector (dim 3) and their joint space (dim 6).

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace wwd {

using Complex = std::complex<double>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kOrthonormalTolerance = 1e-10;

/// Largest ket dimension supported; the joint quanton (x) detector space is 6.
inline constexpr std::size_t kMaxKetDim = 8;

/// Normalized (or explicitly unnormalized) vector of probability amplitudes,
/// stored inline.
class Ket {
public:
    Ket() = default;
    explicit Ket(std::size_t dim);
    Ket(std::initializer_list<Complex> amps);
    explicit Ket(std::vector<Complex> amps);

    /// Unit vector |index> of the given dimension.
    static Ket basis(std::size_t dim, std::size_t index);

    std::size_t dim() const noexcept { return dim_; }
    std::span<const Complex> amplitudes() const noexcept { return {amps_.data(), dim_}; }

    Complex operator[](std::size_t i) const { return amps_[i]; }
    Complex& operator[](std::size_t i) { return amps_[i]; }

    double norm_squared() const noexcept;

    /// Returns a unit-norm copy. Throws std::invalid_argument on a null vector.
    Ket normalized() const;

    Ket& operator+=(const Ket& other);
    Ket& operator-=(const Ket& other);
    Ket& operator*=(Complex factor);

    friend Ket operator+(Ket lhs, const Ket& rhs) { return lhs += rhs; }
    friend Ket operator-(Ket lhs, const Ket& rhs) { return lhs -= rhs; }
    friend Ket operator*(Complex factor, Ket k) { return k *= factor; }
    friend Ket operator*(Ket k, Complex factor) { return k *= factor; }

    bool operator==(const Ket& other) const noexcept;

private:
    std::array<Complex, kMaxKetDim> amps_{};
    std::size_t dim_ = 0;
};

/// Dense square complex matrix, row-major.
class Operator {
public:
    Operator() = default;
    explicit Operator(std::size_t dim);
    Operator(std::size_t dim, std::vector<Complex> row_major);

    static Operator identity(std::size_t dim);
    static Operator diagonal(std::span<const double> values);
    static Operator diagonal(std::initializer_list<double> values);
    /// |a><b|
    static Operator outer(const Ket& a, const Ket& b);
    /// |k><k|
    static Operator projector(const Ket& k) { return outer(k, k); }

    std::size_t dim() const noexcept { return dim_; }
    Complex operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
    Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }

    Complex trace() const noexcept;
    Operator adjoint() const;
    bool is_hermitian(double tol = kHermitianTolerance) const noexcept;
    /// Largest absolute element-wise difference; dimensions must agree.
    double max_abs_diff(const Operator& other) const;

    Ket apply(const Ket& k) const;
    /// <a|M|b>
    Complex matrix_element(const Ket& a, const Ket& b) const;
    /// <k|M|k>, real part only.
    double expectation(const Ket& k) const;

    Operator& operator+=(const Operator& other);
    Operator& operator-=(const Operator& other);
    Operator& operator*=(Complex factor);

    friend Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
    friend Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
    friend Operator operator*(Complex f, Operator m) { return m *= f; }
    friend Operator operator*(const Operator& a, const Operator& b);

private:
    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
};

/// Hermitian, positive semi-definite, unit-trace operator.
class DensityOperator {
public:
    /// Validates the operator; throws std::invalid_argument if it is not a state.
    explicit DensityOperator(Operator rho);

    static DensityOperator pure(const Ket& k);

    const Operator& matrix() const noexcept { return rho_; }
    std::size_t dim() const noexcept { return rho_.dim(); }
    /// <k|rho|k>
    double weight(const Ket& k) const { return rho_.expectation(k); }

private:
    Operator rho_;
};

/// Orthonormal family of n <= dim kets.
class MeasurementBasis {
public:
    /// Throws std::invalid_argument when the Gram matrix deviates from the
    /// identity by more than kOrthonormalTolerance.
    explicit MeasurementBasis(std::vector<Ket> vectors);

    /// The computational basis {|0>, ..., |dim-1>}.
    static MeasurementBasis standard(std::size_t dim);

    std::size_t size() const noexcept { return vectors_.size(); }
    std::size_t dim() const noexcept { return vectors_.empty() ? 0 : vectors_.front().dim(); }
    const Ket& operator[](std::size_t i) const { return vectors_[i]; }
    std::span<const Ket> vectors() const noexcept { return vectors_; }

    auto begin() const noexcept { return vectors_.begin(); }
    auto end() const noexcept { return vectors_.end(); }

    /// Largest element-wise deviation of the Gram matrix from the identity.
    static double orthonormality_error(std::span<const Ket> vectors);

private:
    std::vector<Ket> vectors_;
};

/// <a|b>, conjugate-linear in the first argument.
Complex inner(const Ket& a, const Ket& b);

/// |a> (x) |b> with the first factor as the major index.
Ket tensor(const Ket& a, const Ket& b);

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // descending
    MeasurementBasis eigenvectors;    // eigenvectors[k] belongs to eigenvalues[k]
};

/// Eigendecomposition of a Hermitian operator by cyclic complex Jacobi
/// rotations. Degenerate eigenspaces come out in whatever orthonormal
/// completion the sweep converges to; the result is deterministic.
EigenDecomposition eig_hermitian(const Operator& m);

/// Half the trace norm, 0.5 * sum |lambda_k|.
double trace_norm_half(const Operator& m);

/// Reduced detector state of a quanton (x) detector ket of dimension 6,
/// amplitude index 3*q + d.
DensityOperator partial_trace_quanton(const Ket& joint);

/// Basis drawn from the unitarily invariant (Haar) measure. Columns of a
/// complex Ginibre matrix are orthonormalized by Gram-Schmidt.
MeasurementBasis haar_random_basis(std::mt19937_64& rng, std::size_t dim);

}  // namespace wwd
