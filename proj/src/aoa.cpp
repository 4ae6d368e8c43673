#include "ssbloc/aoa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ssbloc {

namespace {

constexpr double kSpectrumFloor = 1e-12;
constexpr double kLowConfidenceRatio = 3.0;

/// Columns sources..M-1 of the eigenvector stack (noise subspace).
ComplexMatrix noise_subspace(const ComplexMatrix& covariance, std::size_t sources) {
    const std::size_t m = covariance.rows();
    if (sources == 0)
        throw std::invalid_argument("aoa: source count must be positive");
    if (sources >= m)
        throw std::invalid_argument("aoa: source count leaves no noise subspace");
    const EigenDecomposition eig = hermitian_eig(covariance);
    ComplexMatrix en(m, m - sources);
    for (std::size_t c = sources; c < m; ++c)
        for (std::size_t r = 0; r < m; ++r)
            en(r, c - sources) = eig.eigenvectors(r, c);
    return en;
}

}  // namespace

ComplexMatrix covariance(const SnapshotMatrix& snapshots) {
    const std::size_t m = snapshots.rows();
    const std::size_t n = snapshots.cols();
    if (m == 0 || n == 0)
        throw std::invalid_argument("covariance: empty snapshot matrix");
    ComplexMatrix r(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            cdouble acc{};
            for (std::size_t k = 0; k < n; ++k)
                acc += snapshots(i, k) * std::conj(snapshots(j, k));
            acc /= static_cast<double>(n);
            r(i, j) = acc;
            r(j, i) = std::conj(acc);
        }
        r(i, i) = r(i, i).real();
    }
    return r;
}

std::vector<double> default_music_grid() {
    std::vector<double> grid;
    grid.reserve(1799);
    for (int k = -899; k <= 899; ++k)
        grid.push_back(static_cast<double>(k) * 0.1 * M_PI / 180.0);
    return grid;
}

MusicEstimator::MusicEstimator(std::vector<double> grid_rad, std::size_t antennas,
                               std::size_t sources)
    : grid_rad_(std::move(grid_rad)), antennas_(antennas), sources_(sources) {
    if (grid_rad_.empty())
        throw std::invalid_argument("MusicEstimator: empty search grid");
    if (antennas_ < 2)
        throw std::invalid_argument("MusicEstimator: need at least two antennas");
    steering_.resize(grid_rad_.size() * antennas_);
    for (std::size_t i = 0; i < grid_rad_.size(); ++i) {
        const SteeringVector a = steering_vector(grid_rad_[i], antennas_);
        std::copy(a.components.begin(), a.components.end(),
                  steering_.begin() + static_cast<std::ptrdiff_t>(i * antennas_));
    }
}

std::vector<double> MusicEstimator::noise_projection(
    const ComplexMatrix& cov) const {
    if (cov.rows() != antennas_)
        throw std::invalid_argument("MusicEstimator: covariance size mismatch");
    const ComplexMatrix en = noise_subspace(cov, sources_);
    const std::size_t dim = en.cols();

    // ||E_N^H a(theta)||^2 per grid point.
    std::vector<double> proj(grid_rad_.size());
    for (std::size_t i = 0; i < grid_rad_.size(); ++i) {
        const cdouble* a = steering_.data() + i * antennas_;
        double acc = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
            cdouble dot{};
            for (std::size_t r = 0; r < antennas_; ++r)
                dot += std::conj(en(r, c)) * a[r];
            acc += std::norm(dot);
        }
        proj[i] = acc;
    }
    return proj;
}

Pseudospectrum MusicEstimator::spectrum(const ComplexMatrix& cov) const {
    const std::vector<double> proj = noise_projection(cov);
    Pseudospectrum out;
    out.grid_rad = grid_rad_;
    out.values.resize(proj.size());
    for (std::size_t i = 0; i < proj.size(); ++i)
        out.values[i] = 1.0 / std::max(proj[i], kSpectrumFloor);
    return out;
}

AoaEstimate MusicEstimator::estimate(const ComplexMatrix& cov) const {
    const std::vector<double> proj = noise_projection(cov);
    const std::size_t n = proj.size();

    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i)
        values[i] = 1.0 / std::max(proj[i], kSpectrumFloor);

    // Grid argmax; ties resolve toward the smaller |angle|.
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (values[i] > values[best] ||
            (values[i] == values[best] &&
             std::abs(grid_rad_[i]) < std::abs(grid_rad_[best])))
            best = i;
    }

    AoaEstimate est;
    est.algorithm = AoaAlgorithm::music;
    est.angle_rad = grid_rad_[best];

    // One parabolic refinement on the noise projection around the peak.
    if (best > 0 && best + 1 < n) {
        const double dm = proj[best - 1];
        const double d0 = proj[best];
        const double dp = proj[best + 1];
        const double curvature = dm - 2.0 * d0 + dp;
        if (curvature > 0.0) {
            const double h = 0.5 * (grid_rad_[best + 1] - grid_rad_[best - 1]);
            double delta = 0.5 * (dm - dp) / curvature * h;
            delta = std::clamp(delta, -h, h);
            est.angle_rad += delta;
        }
    }

    std::vector<double> sorted(values);
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(n / 2),
                     sorted.end());
    const double median = sorted[n / 2];
    est.low_confidence = values[best] < kLowConfidenceRatio * median;
    return est;
}

Pseudospectrum music_spectrum(const ComplexMatrix& cov, std::size_t sources,
                              const std::vector<double>& grid_rad) {
    return MusicEstimator(grid_rad, cov.rows(), sources).spectrum(cov);
}

AoaEstimate music_aoa(const ComplexMatrix& cov, std::size_t sources,
                      const std::vector<double>& grid_rad) {
    return MusicEstimator(grid_rad, cov.rows(), sources).estimate(cov);
}

AoaEstimate esprit_aoa(const ComplexMatrix& cov, std::size_t sources) {
    const std::size_t m = cov.rows();
    if (sources == 0 || sources >= m)
        throw std::invalid_argument("esprit_aoa: invalid source count");

    const EigenDecomposition eig = hermitian_eig(cov);

    // Single-source shift invariance: the dominant eigenvector restricted to
    // the two overlapping (M-1)-element subarrays differs by e^{j*pi*sin}.
    cdouble cross{};
    double lower_energy = 0.0;
    for (std::size_t r = 0; r + 1 < m; ++r) {
        const cdouble e1 = eig.eigenvectors(r, 0);
        const cdouble e2 = eig.eigenvectors(r + 1, 0);
        cross += std::conj(e1) * e2;
        lower_energy += std::norm(e1);
    }
    if (lower_energy == 0.0)
        throw std::runtime_error("esprit_aoa: degenerate dominant eigenvector");

    const double phase = std::arg(cross / lower_energy);
    const double sine = phase / M_PI;
    if (std::abs(sine) > 1.0)
        throw std::domain_error("esprit_aoa: phase outside the unambiguous range");

    AoaEstimate est;
    est.algorithm = AoaAlgorithm::esprit;
    est.angle_rad = std::asin(sine);
    return est;
}

AoaEstimate root_music_aoa(const ComplexMatrix& cov, std::size_t sources) {
    const std::size_t m = cov.rows();
    const ComplexMatrix en = noise_subspace(cov, sources);
    const std::size_t dim = en.cols();

    // Projector onto the noise subspace.
    ComplexMatrix c(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            cdouble acc{};
            for (std::size_t k = 0; k < dim; ++k)
                acc += en(i, k) * std::conj(en(j, k));
            c(i, j) = acc;
        }

    // Diagonal sums c_k = sum_m C(m, m+k); the Laurent series sum c_k z^k
    // equals a^H(z) C a(z) on the unit circle, so source angles appear as
    // roots z = e^{j*pi*sin(theta)}. Shift by z^{M-1} to get a polynomial.
    const int order = static_cast<int>(m) - 1;
    std::vector<cdouble> coeffs(2 * static_cast<std::size_t>(order) + 1);
    for (int k = -order; k <= order; ++k) {
        cdouble acc{};
        for (std::size_t i = 0; i < m; ++i) {
            const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + k;
            if (j >= 0 && j < static_cast<std::ptrdiff_t>(m))
                acc += c(i, static_cast<std::size_t>(j));
        }
        coeffs[static_cast<std::size_t>(k + order)] = acc;
    }
    if (coeffs.back() == cdouble{})
        throw std::runtime_error("root_music_aoa: degenerate spectrum polynomial");

    const std::vector<cdouble> roots = poly_roots(coeffs);

    // Keep roots on or inside the unit circle, nearest the circle first.
    std::vector<cdouble> inside;
    for (const auto& z : roots)
        if (std::abs(z) <= 1.0) inside.push_back(z);
    std::sort(inside.begin(), inside.end(), [](const cdouble& a, const cdouble& b) {
        return std::abs(1.0 - std::abs(a)) < std::abs(1.0 - std::abs(b));
    });
    if (inside.empty() || std::abs(1.0 - std::abs(inside.front())) >= 0.5)
        throw std::runtime_error("root_music_aoa: no root near the unit circle");

    AoaEstimate est;
    est.algorithm = AoaAlgorithm::root_music;
    est.angle_rad = std::asin(std::arg(inside.front()) / M_PI);
    return est;
}

}  // namespace ssbloc
