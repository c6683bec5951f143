#ifndef MVBBO_SAMPLING_HPP
#define MVBBO_SAMPLING_HPP

#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "mvbbo/categorical.hpp"
#include "mvbbo/cma.hpp"
#include "mvbbo/search_space.hpp"

namespace mvbbo {

/// Midpoint thresholds between consecutive integer levels, per dimension.
struct ThresholdTable {
  std::vector<std::vector<double>> thresholds;  ///< size L_n - 1 per dimension
};

ThresholdTable build_thresholds(const SearchSpace& space);

/// Index into the level list selected by the encoding function: the value maps
/// to the lowest level whose upper threshold is >= value (ties go to the lower
/// level), or to the last level when above every threshold.
std::size_t encode_level_index(double value,
                               const std::vector<double>& thresholds);

/// Enc restricted to one integer dimension: returns the level value.
double encode_level(double value, const std::vector<double>& levels,
                    const std::vector<double>& thresholds);

/// Full encoding: continuous slots are copied verbatim, integer slots are
/// discretized to their level values.
void encode(const Eigen::VectorXd& pre_encoding, const SearchSpace& space,
            const ThresholdTable& table, Eigen::VectorXd& x, Eigen::VectorXd& z);

/// Enc applied to the integer slots only; returns the level values, length n_in.
Eigen::VectorXd encode_integer_part(const Eigen::VectorXd& pre_encoding,
                                    const SearchSpace& space,
                                    const ThresholdTable& table);

/// Threshold geometry around one coordinate of the mean vector. When the
/// encoded mean is an edge level there is a single nearest threshold;
/// otherwise the coordinate is bracketed by two.
struct NearestThresholds {
  bool edge = false;
  double nearest = 0.0;  ///< edge case
  double lower = 0.0;    ///< interior: largest threshold strictly below
  double upper = 0.0;    ///< interior: smallest threshold >= the coordinate
};

NearestThresholds nearest_thresholds(double mean_coordinate, std::size_t dim,
                                     const SearchSpace& space,
                                     const ThresholdTable& table);

/// Symmetric-eigendecomposition square root and inverse square root of the
/// covariance matrix. Eigenvalues are clamped at 1e-30 before the square root;
/// a non-positive eigenvalue is a hard error.
struct CovarianceFactor {
  Eigen::MatrixXd sqrt;      ///< C^{1/2}
  Eigen::MatrixXd inv_sqrt;  ///< C^{-1/2}
  double min_eigenvalue = 0.0;
};

CovarianceFactor factor_covariance(const Eigen::MatrixXd& covariance);

/// Draws one one-hot sample per categorical dimension from p(c | q).
std::vector<Eigen::VectorXd> sample_categorical(
    const std::vector<Eigen::VectorXd>& q, std::mt19937_64& rng);

/// Samples `count` solutions: xi ~ N(0, I), y = sqrt(C) xi, v = m + sigma A y,
/// (x, z) = Enc(v), c ~ p(c | q). Both v and y are retained on each solution.
std::vector<MixedSolution> sample_population(const GaussianState& gauss,
                                             const CategoricalState& cat,
                                             const SearchSpace& space,
                                             const ThresholdTable& table,
                                             std::size_t count,
                                             std::mt19937_64& rng);

}  // namespace mvbbo

#endif  // MVBBO_SAMPLING_HPP
