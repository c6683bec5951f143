#ifndef MVBBO_CMA_HPP
#define MVBBO_CMA_HPP

#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace mvbbo {

/// State of the multivariate Gaussian N(m, sigma^2 A C A) over the combined
/// continuous+integer vector, together with the evolution paths and the
/// per-integer-dimension mutation-rate memory.
struct GaussianState {
  Eigen::VectorXd mean;           ///< m, length mixed_count
  double sigma = 1.0;             ///< step-size, > 0
  Eigen::MatrixXd covariance;     ///< C, symmetric positive definite
  Eigen::VectorXd amplitude;      ///< diagonal of A, all > 0
  Eigen::VectorXd path_sigma;     ///< p_sigma
  Eigen::VectorXd path_cov;       ///< p_c
  Eigen::VectorXd mutation_rate;  ///< p_mut per integer dimension, in (0, 1]
  long iteration = 0;             ///< t
};

/// Sample size, recombination weights, and learning rates. The first mu
/// weights are positive and sum to one; the remainder are negative and drive
/// active covariance matrix adaptation.
struct CmaHyperparameters {
  std::size_t lambda = 0;
  std::size_t mu = 0;
  Eigen::VectorXd weights;  ///< length lambda, descending
  double c_m = 1.0;
  double c_sigma = 0.0;
  double d_sigma = 1.0;
  double c_c = 0.0;
  double c_1 = 0.0;
  double c_mu = 0.0;
  double mu_w = 1.0;  ///< variance-effective selection mass of positive weights
};

/// Standard default hyperparameters. The sample size uses the total variable
/// count (continuous + integer + categorical); the learning rates use the
/// Gaussian dimension. lambda = 4 + floor(3 ln(total_dim)).
CmaHyperparameters default_hyperparameters(std::size_t mixed_dim,
                                           std::size_t total_dim);

/// E||N(0, I_dim)|| via the usual sqrt(d) (1 - 1/(4d) + 1/(21 d^2)) series.
double expected_standard_norm(std::size_t dim);

/// m <- m + c_m sigma A sum_{i<=mu} w_i y_{i:lambda}.
/// ranked_whitened holds the whitened vectors of all lambda solutions in rank
/// order (best first), after any integer centering.
void update_mean(GaussianState& state, const CmaHyperparameters& hyper,
                 const std::vector<Eigen::VectorXd>& ranked_whitened);

/// Updates both evolution paths and returns the Heaviside flag h_sigma used
/// by the covariance update. inv_sqrt_cov is C^{-1/2} of the pre-update C.
bool update_paths(GaussianState& state, const CmaHyperparameters& hyper,
                  const std::vector<Eigen::VectorXd>& ranked_whitened,
                  const Eigen::MatrixXd& inv_sqrt_cov);

/// Rank-one plus rank-mu covariance update with active (negative-weight)
/// adaptation; uses the already-updated p_c. The result is symmetrized. Throws
/// if the updated matrix loses positive definiteness.
void update_covariance(GaussianState& state, const CmaHyperparameters& hyper,
                       const std::vector<Eigen::VectorXd>& ranked_whitened,
                       bool h_sigma, const Eigen::MatrixXd& inv_sqrt_cov);

/// Cumulative step-size adaptation using the already-updated p_sigma.
void update_stepsize(GaussianState& state, const CmaHyperparameters& hyper);

}  // namespace mvbbo

#endif  // MVBBO_CMA_HPP
