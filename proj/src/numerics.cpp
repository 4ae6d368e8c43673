#include "ssbloc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ssbloc {

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out(c, r) = std::conj((*this)(r, c));
    return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("matrix product: inner dimensions differ");
    ComplexMatrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const cdouble a = (*this)(r, k);
            if (a == cdouble{}) continue;
            for (std::size_t c = 0; c < rhs.cols_; ++c)
                out(r, c) += a * rhs(k, c);
        }
    }
    return out;
}

double ComplexMatrix::frobenius_norm() const {
    double acc = 0.0;
    for (const auto& v : entries_) acc += std::norm(v);
    return std::sqrt(acc);
}

double ComplexMatrix::hermitian_defect() const {
    if (rows_ != cols_) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r; c < cols_; ++c)
            worst = std::max(worst,
                             std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    const double scale = frobenius_norm();
    return scale > 0.0 ? worst / scale : worst;
}

namespace {

constexpr int kMaxJacobiSweeps = 100;
constexpr double kJacobiTolFactor = 1e-14;
constexpr double kHermitianDefectTol = 1e-9;

double offdiagonal_norm(const ComplexMatrix& a) {
    double acc = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (r != c) acc += std::norm(a(r, c));
    return std::sqrt(acc);
}

}  // namespace

EigenDecomposition hermitian_eig(const ComplexMatrix& input) {
    const std::size_t n = input.rows();
    if (n == 0 || input.cols() != n)
        throw std::invalid_argument("hermitian_eig: matrix must be square");
    if (input.hermitian_defect() > kHermitianDefectTol)
        throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");

    // Work on the Hermitian average so tiny asymmetries cannot bias sweeps.
    ComplexMatrix a(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            a(r, c) = 0.5 * (input(r, c) + std::conj(input(c, r)));

    ComplexMatrix v = ComplexMatrix::identity(n);
    const double stop = kJacobiTolFactor * std::max(a.frobenius_norm(), 1e-300);

    int sweep = 0;
    while (offdiagonal_norm(a) > stop) {
        if (++sweep > kMaxJacobiSweeps)
            throw std::runtime_error("hermitian_eig: Jacobi sweeps did not converge");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cdouble apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;

                // Unitary rotation G with G(p,p)=c, G(p,q)=s*e^{i*alpha},
                // G(q,p)=-s*e^{-i*alpha}, G(q,q)=c chosen to zero a(p,q).
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const cdouble phase = apq / mag;
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cdouble spe = s * phase;

                for (std::size_t k = 0; k < n; ++k) {
                    const cdouble akp = a(k, p);
                    const cdouble akq = a(k, q);
                    a(k, p) = c * akp - std::conj(spe) * akq;
                    a(k, q) = spe * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cdouble apk = a(p, k);
                    const cdouble aqk = a(q, k);
                    a(p, k) = c * apk - spe * aqk;
                    a(q, k) = std::conj(spe) * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;

                for (std::size_t k = 0; k < n; ++k) {
                    const cdouble vkp = v(k, p);
                    const cdouble vkq = v(k, q);
                    v(k, p) = c * vkp - std::conj(spe) * vkq;
                    v(k, q) = spe * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() > a(j, j).real();
    });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r)
            out.eigenvectors(r, k) = v(r, order[k]);
    }
    return out;
}

namespace {

constexpr int kDurandKernerCap = 500;
constexpr double kDurandKernerTol = 1e-12;

cdouble eval_monic(const std::vector<cdouble>& monic, cdouble z) {
    // monic[k] multiplies z^k, implicit leading 1 at degree monic.size().
    cdouble acc = 1.0;
    for (std::size_t k = monic.size(); k-- > 0;) acc = acc * z + monic[k];
    return acc;
}

}  // namespace

std::vector<cdouble> poly_roots(const std::vector<cdouble>& coeffs) {
    if (coeffs.size() < 2)
        throw std::invalid_argument("poly_roots: degree must be at least 1");
    if (coeffs.back() == cdouble{})
        throw std::invalid_argument("poly_roots: leading coefficient is zero");

    const std::size_t degree = coeffs.size() - 1;
    std::vector<cdouble> monic(degree);
    for (std::size_t k = 0; k < degree; ++k) monic[k] = coeffs[k] / coeffs.back();

    double max_mag = 0.0;
    for (const auto& c : monic) max_mag = std::max(max_mag, std::abs(c));
    const double radius = 1.0 + max_mag;

    // Initial guesses on a circle, rotated off the axes to break the
    // symmetries of real-coefficient polynomials.
    std::vector<cdouble> roots(degree);
    for (std::size_t k = 0; k < degree; ++k) {
        const double ang = 2.0 * M_PI * static_cast<double>(k) /
                               static_cast<double>(degree) +
                           0.4;
        roots[k] = std::polar(radius, ang);
    }

    for (int iter = 0; iter < kDurandKernerCap; ++iter) {
        double worst_move = 0.0;
        for (std::size_t i = 0; i < degree; ++i) {
            cdouble denom = 1.0;
            for (std::size_t j = 0; j < degree; ++j)
                if (j != i) denom *= roots[i] - roots[j];
            if (denom == cdouble{}) {
                // Coincident iterates: nudge and retry next round.
                roots[i] += cdouble(1e-8, 1e-8);
                worst_move = std::max(worst_move, 1e-8);
                continue;
            }
            const cdouble delta = eval_monic(monic, roots[i]) / denom;
            roots[i] -= delta;
            worst_move = std::max(worst_move, std::abs(delta));
        }
        if (worst_move < kDurandKernerTol) break;
    }
    return roots;
}

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_in_place(std::vector<cdouble>& x, bool inverse) {
    const std::size_t n = x.size();
    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
        const cdouble wlen = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            cdouble w = 1.0;
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cdouble u = x[i + k];
                const cdouble t = w * x[i + k + len / 2];
                x[i + k] = u + t;
                x[i + k + len / 2] = u - t;
                w *= wlen;
            }
        }
    }
}

}  // namespace

std::vector<cdouble> fft(std::span<const cdouble> x) {
    if (!is_pow2(x.size()))
        throw std::invalid_argument("fft: length must be a power of two");
    std::vector<cdouble> out(x.begin(), x.end());
    fft_in_place(out, false);
    return out;
}

std::vector<cdouble> ifft(std::span<const cdouble> x) {
    if (!is_pow2(x.size()))
        throw std::invalid_argument("ifft: length must be a power of two");
    std::vector<cdouble> out(x.begin(), x.end());
    fft_in_place(out, true);
    const double scale = 1.0 / static_cast<double>(out.size());
    for (auto& v : out) v *= scale;
    return out;
}

}  // namespace ssbloc
