#include "mvbbo/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace mvbbo {

ThresholdTable build_thresholds(const SearchSpace& space) {
  ThresholdTable table;
  table.thresholds.resize(space.integer_count());
  for (std::size_t n = 0; n < space.integer_count(); ++n) {
    const auto& levels = space.integer_levels[n];
    auto& row = table.thresholds[n];
    row.resize(levels.size() - 1);
    for (std::size_t l = 0; l + 1 < levels.size(); ++l) {
      row[l] = 0.5 * (levels[l] + levels[l + 1]);
    }
  }
  return table;
}

std::size_t encode_level_index(double value,
                               const std::vector<double>& thresholds) {
  const auto it =
      std::lower_bound(thresholds.begin(), thresholds.end(), value);
  return static_cast<std::size_t>(it - thresholds.begin());
}

double encode_level(double value, const std::vector<double>& levels,
                    const std::vector<double>& thresholds) {
  return levels[encode_level_index(value, thresholds)];
}

void encode(const Eigen::VectorXd& pre_encoding, const SearchSpace& space,
            const ThresholdTable& table, Eigen::VectorXd& x,
            Eigen::VectorXd& z) {
  x.resize(static_cast<Eigen::Index>(space.continuous_count));
  z.resize(static_cast<Eigen::Index>(space.integer_count()));
  for (std::size_t n = 0; n < space.continuous_count; ++n) {
    x[static_cast<Eigen::Index>(n)] =
        pre_encoding[static_cast<Eigen::Index>(space.continuous_slot[n])];
  }
  for (std::size_t n = 0; n < space.integer_count(); ++n) {
    const double v =
        pre_encoding[static_cast<Eigen::Index>(space.integer_slot[n])];
    z[static_cast<Eigen::Index>(n)] =
        encode_level(v, space.integer_levels[n], table.thresholds[n]);
  }
}

Eigen::VectorXd encode_integer_part(const Eigen::VectorXd& pre_encoding,
                                    const SearchSpace& space,
                                    const ThresholdTable& table) {
  Eigen::VectorXd z(static_cast<Eigen::Index>(space.integer_count()));
  for (std::size_t n = 0; n < space.integer_count(); ++n) {
    const double v =
        pre_encoding[static_cast<Eigen::Index>(space.integer_slot[n])];
    z[static_cast<Eigen::Index>(n)] =
        encode_level(v, space.integer_levels[n], table.thresholds[n]);
  }
  return z;
}

NearestThresholds nearest_thresholds(double mean_coordinate, std::size_t dim,
                                     const SearchSpace& space,
                                     const ThresholdTable& table) {
  const auto& levels = space.integer_levels[dim];
  const auto& thresholds = table.thresholds[dim];
  const std::size_t index = encode_level_index(mean_coordinate, thresholds);

  NearestThresholds result;
  if (index == 0 || index == levels.size() - 1) {
    result.edge = true;
    result.nearest = index == 0 ? thresholds.front() : thresholds.back();
    return result;
  }
  // Interior level l: thresholds[l-1] < m <= thresholds[l].
  result.lower = thresholds[index - 1];
  result.upper = thresholds[index];
  return result;
}

CovarianceFactor factor_covariance(const Eigen::MatrixXd& covariance) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(covariance);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("factor_covariance: eigendecomposition failed");
  }
  CovarianceFactor factor;
  factor.min_eigenvalue =
      covariance.size() == 0 ? 1.0 : solver.eigenvalues().minCoeff();
  if (covariance.size() > 0) {
    const double max_eig = solver.eigenvalues().maxCoeff();
    if (factor.min_eigenvalue <= -1e-8 * std::max(1.0, max_eig)) {
      throw std::runtime_error(
          "factor_covariance: covariance not positive definite (eigenvalue " +
          std::to_string(factor.min_eigenvalue) + ")");
    }
  }
  const Eigen::VectorXd clamped = solver.eigenvalues().cwiseMax(1e-30);
  const Eigen::VectorXd roots = clamped.cwiseSqrt();
  factor.sqrt = solver.eigenvectors() * roots.asDiagonal() *
                solver.eigenvectors().transpose();
  factor.inv_sqrt = solver.eigenvectors() * roots.cwiseInverse().asDiagonal() *
                    solver.eigenvectors().transpose();
  return factor;
}

std::vector<Eigen::VectorXd> sample_categorical(
    const std::vector<Eigen::VectorXd>& q, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<Eigen::VectorXd> sample(q.size());
  for (std::size_t n = 0; n < q.size(); ++n) {
    const double u = uniform(rng);
    double cumulative = 0.0;
    Eigen::Index chosen = q[n].size() - 1;
    for (Eigen::Index k = 0; k < q[n].size(); ++k) {
      cumulative += q[n][k];
      if (u < cumulative) {
        chosen = k;
        break;
      }
    }
    sample[n] = Eigen::VectorXd::Zero(q[n].size());
    sample[n][chosen] = 1.0;
  }
  return sample;
}

std::vector<MixedSolution> sample_population(const GaussianState& gauss,
                                             const CategoricalState& cat,
                                             const SearchSpace& space,
                                             const ThresholdTable& table,
                                             std::size_t count,
                                             std::mt19937_64& rng) {
  const Eigen::Index n_mixed = gauss.mean.size();
  CovarianceFactor factor;
  if (n_mixed > 0) factor = factor_covariance(gauss.covariance);

  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<MixedSolution> population(count);
  for (auto& solution : population) {
    Eigen::VectorXd xi(n_mixed);
    for (Eigen::Index j = 0; j < n_mixed; ++j) xi[j] = normal(rng);
    solution.whitened = n_mixed > 0 ? Eigen::VectorXd(factor.sqrt * xi)
                                    : Eigen::VectorXd(0);
    solution.pre_encoding =
        gauss.mean +
        gauss.sigma * gauss.amplitude.cwiseProduct(solution.whitened);
    encode(solution.pre_encoding, space, table, solution.x, solution.z);
    solution.c = sample_categorical(cat.q, rng);
  }
  return population;
}

}  // namespace mvbbo
