#include "mvbbo/categorical.hpp"

#include <cmath>
#include <stdexcept>

namespace mvbbo {

std::size_t CategoricalState::degrees_of_freedom() const {
  std::size_t dof = 0;
  for (const auto& block : q) dof += static_cast<std::size_t>(block.size()) - 1;
  return dof;
}

std::vector<Eigen::VectorXd> natural_gradient(
    const std::vector<Eigen::VectorXd>& q,
    const std::vector<const MixedSolution*>& ranked, std::size_t mu,
    const Eigen::VectorXd& weights) {
  std::vector<Eigen::VectorXd> gradient(q.size());
  for (std::size_t n = 0; n < q.size(); ++n) {
    gradient[n] = Eigen::VectorXd::Zero(q[n].size());
    for (std::size_t i = 0; i < mu; ++i) {
      gradient[n] += weights[static_cast<Eigen::Index>(i)] *
                     (ranked[i]->c[n] - q[n]);
    }
  }
  return gradient;
}

double fisher_norm_sq(const std::vector<Eigen::VectorXd>& q,
                      const std::vector<Eigen::VectorXd>& gradient) {
  double total = 0.0;
  for (std::size_t n = 0; n < q.size(); ++n) {
    if (q[n].minCoeff() <= 0.0) {
      throw std::runtime_error(
          "fisher_norm_sq: non-positive probability (margin violated)");
    }
    total += gradient[n].cwiseAbs2().cwiseQuotient(q[n]).sum();
  }
  return total;
}

std::vector<Eigen::VectorXd> fisher_sqrt_gradient(
    const std::vector<Eigen::VectorXd>& q,
    const std::vector<Eigen::VectorXd>& gradient) {
  std::vector<Eigen::VectorXd> result(q.size());
  for (std::size_t n = 0; n < q.size(); ++n) {
    result[n] = gradient[n].cwiseQuotient(q[n].cwiseSqrt());
  }
  return result;
}

void update_q(CategoricalState& state,
              const std::vector<Eigen::VectorXd>& gradient,
              double fisher_norm) {
  if (fisher_norm <= 0.0) return;
  for (std::size_t n = 0; n < state.q.size(); ++n) {
    state.q[n] += (state.delta / fisher_norm) * gradient[n];
  }
}

void update_trust_region(CategoricalState& state,
                         const std::vector<Eigen::VectorXd>& fisher_sqrt_grad,
                         double fisher_norm_squared, double alpha_snr) {
  // The margin floor keeps the gradient toward a saturated category alive
  // forever, so delta can outgrow the block dimension; beta is a mixing rate
  // and stays capped at full replacement. At beta = 1 the radius exponent is
  // negative, which bounds delta as a side effect.
  const double beta = std::min(
      1.0, state.delta / static_cast<double>(state.degrees_of_freedom()));
  double s_norm_sq = 0.0;
  for (std::size_t n = 0; n < state.s.size(); ++n) {
    state.s[n] = (1.0 - beta) * state.s[n] +
                 std::sqrt(beta * (2.0 - beta)) * fisher_sqrt_grad[n];
    s_norm_sq += state.s[n].squaredNorm();
  }
  state.gamma = (1.0 - beta) * (1.0 - beta) * state.gamma +
                beta * (2.0 - beta) * fisher_norm_squared;
  state.delta *= std::exp(beta * (s_norm_sq / alpha_snr - state.gamma));
}

double sigma_floor(double sigma, double min_covariance_eigenvalue,
                   double lambda_min) {
  return std::max(sigma, std::sqrt(lambda_min / min_covariance_eigenvalue));
}

Eigen::VectorXd q_margin_correction(const Eigen::VectorXd& q, double q_min) {
  Eigen::VectorXd clipped = q.cwiseMax(q_min);
  const double slack = (clipped.array() - q_min).sum();
  if (slack <= 0.0) {
    // Every entry at the floor: fall back to uniform.
    return Eigen::VectorXd::Constant(q.size(),
                                     1.0 / static_cast<double>(q.size()));
  }
  const double deficit = 1.0 - clipped.sum();
  clipped.array() += (deficit / slack) * (clipped.array() - q_min);
  return clipped;
}

std::vector<double> default_q_min(const SearchSpace& space) {
  const double discrete =
      static_cast<double>(space.integer_count() + space.categorical_count());
  std::vector<double> floors(space.categorical_count());
  for (std::size_t n = 0; n < floors.size(); ++n) {
    floors[n] = (1.0 - std::pow(0.73, 1.0 / discrete)) /
                (static_cast<double>(space.category_counts[n]) - 1.0);
  }
  return floors;
}

}  // namespace mvbbo
