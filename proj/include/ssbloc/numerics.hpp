#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ssbloc {

using cdouble = std::complex<double>;

/// @brief Dense row-major complex matrix, sized for small array-processing
/// problems (covariances, eigenvector stacks).
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cdouble& operator()(std::size_t r, std::size_t c) {
        return entries_[r * cols_ + c];
    }
    const cdouble& operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }

    /// Conjugate transpose.
    ComplexMatrix adjoint() const;

    ComplexMatrix operator*(const ComplexMatrix& rhs) const;

    double frobenius_norm() const;

    /// Max |a_ij - conj(a_ji)| relative to the Frobenius norm.
    double hermitian_defect() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cdouble> entries_;
};

/// @brief Eigen pairs of a Hermitian matrix, eigenvalues sorted descending.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;  ///< Unitary; column k pairs with eigenvalues[k].
};

/// @brief Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Sweeps Givens-like unitary rotations over all off-diagonal pairs until the
/// off-diagonal Frobenius mass falls below 1e-14 times the input norm.
/// Throws std::invalid_argument for non-square or non-Hermitian input and
/// std::runtime_error if 100 sweeps do not converge.
EigenDecomposition hermitian_eig(const ComplexMatrix& a);

/// @brief All complex roots of a polynomial via the Durand-Kerner iteration.
///
/// Coefficients are in ascending order: coeffs[k] multiplies z^k. Degree must
/// be at least 1 and the leading coefficient nonzero (std::invalid_argument
/// otherwise). Iteration stops when every root moves less than 1e-12 or after
/// 500 rounds, whichever comes first.
std::vector<cdouble> poly_roots(const std::vector<cdouble>& coeffs);

/// @brief Radix-2 decimation-in-time FFT. Length must be a power of two.
std::vector<cdouble> fft(std::span<const cdouble> x);

/// @brief Inverse FFT with 1/N normalization. Length must be a power of two.
std::vector<cdouble> ifft(std::span<const cdouble> x);

}  // namespace ssbloc
