#ifndef MVBBO_CATEGORICAL_HPP
#define MVBBO_CATEGORICAL_HPP

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "mvbbo/search_space.hpp"

namespace mvbbo {

/// Parameters of the family of categorical distributions together with the
/// adaptive trust-region accumulators.
struct CategoricalState {
  std::vector<Eigen::VectorXd> q;  ///< q[n] on the K_n-simplex
  double delta = 1.0;              ///< trust-region radius
  std::vector<Eigen::VectorXd> s;  ///< natural-gradient accumulator, shaped like q
  double gamma = 0.0;
  std::vector<double> q_min;       ///< margin floor per dimension

  std::size_t dimension_count() const { return q.size(); }

  /// sum_n (K_n - 1), the denominator of the trust-region mixing rate beta.
  std::size_t degrees_of_freedom() const;
};

/// Monte-Carlo estimate of the natural gradient restricted to the mu best
/// solutions: G_n = sum_{i<=mu} w_i (c_{i:lambda,n} - q_n).
std::vector<Eigen::VectorXd> natural_gradient(
    const std::vector<Eigen::VectorXd>& q,
    const std::vector<const MixedSolution*>& ranked, std::size_t mu,
    const Eigen::VectorXd& weights);

/// Squared Fisher norm sum_n sum_k G_{n,k}^2 / q_{n,k} under the
/// block-diagonal Fisher matrix F_n = diag(1/q_n). Throws if any q entry is
/// non-positive (the margin correction must have run upstream).
double fisher_norm_sq(const std::vector<Eigen::VectorXd>& q,
                      const std::vector<Eigen::VectorXd>& gradient);

/// F^{1/2} G, elementwise G_{n,k} / sqrt(q_{n,k}).
std::vector<Eigen::VectorXd> fisher_sqrt_gradient(
    const std::vector<Eigen::VectorXd>& q,
    const std::vector<Eigen::VectorXd>& gradient);

/// q <- q + delta G / ||G||_F(q). A zero gradient leaves q unchanged.
void update_q(CategoricalState& state,
              const std::vector<Eigen::VectorXd>& gradient,
              double fisher_norm);

/// Updates s, gamma, and delta from the pre-update Fisher quantities.
/// beta = delta / sum_n (K_n - 1) is taken from the pre-update delta.
void update_trust_region(CategoricalState& state,
                         const std::vector<Eigen::VectorXd>& fisher_sqrt_grad,
                         double fisher_norm_squared, double alpha_snr);

/// sigma <- max{sigma, sqrt(lambda_min / min eig(C))}.
double sigma_floor(double sigma, double min_covariance_eigenvalue,
                   double lambda_min);

/// Clips one probability block to the floor and redistributes the excess so
/// that the block sums to one again. If every entry sits at the floor the
/// block degenerates to uniform.
Eigen::VectorXd q_margin_correction(const Eigen::VectorXd& q, double q_min);

/// Promising margin floor per categorical dimension:
/// q_min[n] = (1 - 0.73^{1/(N_in + N_ca)}) / (K_n - 1).
std::vector<double> default_q_min(const SearchSpace& space);

}  // namespace mvbbo

#endif  // MVBBO_CATEGORICAL_HPP
