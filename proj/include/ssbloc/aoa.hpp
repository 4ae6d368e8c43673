#pragma once

#include <cstddef>
#include <vector>

#include "ssbloc/channel.hpp"
#include "ssbloc/numerics.hpp"

namespace ssbloc {

enum class AoaAlgorithm { music, esprit, root_music };

/// @brief Subspace pseudospectrum sampled over a fixed angular grid.
struct Pseudospectrum {
    std::vector<double> grid_rad;
    std::vector<double> values;
};

struct AoaEstimate {
    double angle_rad = 0.0;
    AoaAlgorithm algorithm = AoaAlgorithm::music;
    /// Set when the spectrum is too flat to trust (peak-to-median ratio < 3);
    /// callers are expected to hold their previous bearing.
    bool low_confidence = false;
};

/// @brief Sample covariance R = X X^H / N, re-symmetrized to be exactly
/// Hermitian. Fewer snapshots than antennas is legal but rank deficient.
ComplexMatrix covariance(const SnapshotMatrix& snapshots);

/// Scan grid of the spectral search: -89.9 to +89.9 degrees in 0.1 degree
/// steps (the open interval excludes the endfire singularities).
std::vector<double> default_music_grid();

/// @brief Spectral search engine with the steering table precomputed once,
/// so per-covariance evaluations stay cheap inside simulation loops.
class MusicEstimator {
public:
    MusicEstimator(std::vector<double> grid_rad, std::size_t antennas,
                   std::size_t sources);

    Pseudospectrum spectrum(const ComplexMatrix& covariance) const;
    AoaEstimate estimate(const ComplexMatrix& covariance) const;

    const std::vector<double>& grid() const { return grid_rad_; }

private:
    std::vector<double> noise_projection(const ComplexMatrix& covariance) const;

    std::vector<double> grid_rad_;
    std::size_t antennas_;
    std::size_t sources_;
    std::vector<cdouble> steering_;  ///< grid-major table, antennas per point
};

/// One-shot wrappers over MusicEstimator.
Pseudospectrum music_spectrum(const ComplexMatrix& covariance, std::size_t sources,
                              const std::vector<double>& grid_rad);
AoaEstimate music_aoa(const ComplexMatrix& covariance, std::size_t sources,
                      const std::vector<double>& grid_rad);

/// @brief Shift-invariance estimate from the dominant eigenvector: the phase
/// of the least-squares ratio between the two overlapping subarrays.
AoaEstimate esprit_aoa(const ComplexMatrix& covariance, std::size_t sources = 1);

/// @brief Polynomial-rooting estimate: diagonal sums of the noise-subspace
/// projector form a degree 2(M-1) polynomial whose unit-circle roots are the
/// source angles. Throws std::runtime_error when no root approaches the
/// circle (degenerate spectrum).
AoaEstimate root_music_aoa(const ComplexMatrix& covariance, std::size_t sources = 1);

}  // namespace ssbloc
