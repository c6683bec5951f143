#include "mvbbo/cma.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace mvbbo {

CmaHyperparameters default_hyperparameters(std::size_t mixed_dim,
                                           std::size_t total_dim) {
  if (total_dim < 1) {
    throw std::invalid_argument("default_hyperparameters: total_dim must be >= 1");
  }
  CmaHyperparameters h;
  h.lambda = 4 + static_cast<std::size_t>(
                     std::floor(3.0 * std::log(static_cast<double>(total_dim))));
  h.mu = h.lambda / 2;

  // Raw log-linear weights; positive for the top half, negative below.
  const auto lambda_i = static_cast<Eigen::Index>(h.lambda);
  Eigen::VectorXd raw(lambda_i);
  const double pivot = std::log((static_cast<double>(h.lambda) + 1.0) / 2.0);
  for (Eigen::Index i = 0; i < lambda_i; ++i) {
    raw[i] = pivot - std::log(static_cast<double>(i + 1));
  }
  const auto mu_i = static_cast<Eigen::Index>(h.mu);
  const double positive_sum = raw.head(mu_i).sum();
  const double positive_sq = raw.head(mu_i).squaredNorm();
  h.mu_w = positive_sum * positive_sum / positive_sq;
  const double negative_sum = raw.tail(lambda_i - mu_i).sum();
  const double negative_sq = raw.tail(lambda_i - mu_i).squaredNorm();
  const double mu_w_minus = negative_sum * negative_sum / negative_sq;

  // Learning rates are functions of the Gaussian dimension. A degenerate
  // Gaussian (no continuous or integer variables) still gets usable weights;
  // the rates are then never consulted.
  const double n = static_cast<double>(std::max<std::size_t>(mixed_dim, 1));
  constexpr double alpha_cov = 2.0;
  h.c_m = 1.0;
  h.c_sigma = (h.mu_w + 2.0) / (n + h.mu_w + 5.0);
  h.d_sigma =
      1.0 + 2.0 * std::max(0.0, std::sqrt((h.mu_w - 1.0) / (n + 1.0)) - 1.0) +
      h.c_sigma;
  h.c_c = (4.0 + h.mu_w / n) / (n + 4.0 + 2.0 * h.mu_w / n);
  h.c_1 = alpha_cov / ((n + 1.3) * (n + 1.3) + h.mu_w);
  h.c_mu = std::min(1.0 - h.c_1,
                    alpha_cov * (h.mu_w - 2.0 + 1.0 / h.mu_w) /
                        ((n + 2.0) * (n + 2.0) + alpha_cov * h.mu_w / 2.0));

  const double min_alpha =
      std::min({1.0 + h.c_1 / h.c_mu,
                1.0 + 2.0 * mu_w_minus / (h.mu_w + 2.0),
                (1.0 - h.c_1 - h.c_mu) / (n * h.c_mu)});

  h.weights.resize(lambda_i);
  h.weights.head(mu_i) = raw.head(mu_i) / positive_sum;
  h.weights.tail(lambda_i - mu_i) =
      raw.tail(lambda_i - mu_i) * (min_alpha / std::abs(negative_sum));
  return h;
}

double expected_standard_norm(std::size_t dim) {
  const double n = static_cast<double>(dim);
  return std::sqrt(n) * (1.0 - 1.0 / (4.0 * n) + 1.0 / (21.0 * n * n));
}

namespace {

Eigen::VectorXd weighted_step(const CmaHyperparameters& hyper,
                              const std::vector<Eigen::VectorXd>& ranked) {
  Eigen::VectorXd step = Eigen::VectorXd::Zero(ranked.front().size());
  for (std::size_t i = 0; i < hyper.mu; ++i) {
    step += hyper.weights[static_cast<Eigen::Index>(i)] * ranked[i];
  }
  return step;
}

}  // namespace

void update_mean(GaussianState& state, const CmaHyperparameters& hyper,
                 const std::vector<Eigen::VectorXd>& ranked_whitened) {
  const Eigen::VectorXd step = weighted_step(hyper, ranked_whitened);
  state.mean += hyper.c_m * state.sigma * state.amplitude.cwiseProduct(step);
}

bool update_paths(GaussianState& state, const CmaHyperparameters& hyper,
                  const std::vector<Eigen::VectorXd>& ranked_whitened,
                  const Eigen::MatrixXd& inv_sqrt_cov) {
  const Eigen::VectorXd step = weighted_step(hyper, ranked_whitened);
  const double n = static_cast<double>(state.mean.size());

  state.path_sigma =
      (1.0 - hyper.c_sigma) * state.path_sigma +
      std::sqrt(hyper.c_sigma * (2.0 - hyper.c_sigma) * hyper.mu_w) *
          (inv_sqrt_cov * step);

  const double horizon = static_cast<double>(state.iteration + 1);
  const double normalizer =
      std::sqrt(1.0 - std::pow(1.0 - hyper.c_sigma, 2.0 * horizon));
  const double threshold =
      (1.4 + 2.0 / (n + 1.0)) * expected_standard_norm(state.mean.size());
  const bool h_sigma =
      state.path_sigma.norm() / normalizer < threshold;

  state.path_cov = (1.0 - hyper.c_c) * state.path_cov;
  if (h_sigma) {
    state.path_cov +=
        std::sqrt(hyper.c_c * (2.0 - hyper.c_c) * hyper.mu_w) * step;
  }
  return h_sigma;
}

void update_covariance(GaussianState& state, const CmaHyperparameters& hyper,
                       const std::vector<Eigen::VectorXd>& ranked_whitened,
                       bool h_sigma, const Eigen::MatrixXd& inv_sqrt_cov) {
  const double n = static_cast<double>(state.mean.size());
  const double weight_sum = hyper.weights.sum();
  double decay = 1.0 - hyper.c_1 - hyper.c_mu * weight_sum;
  if (!h_sigma) {
    decay += hyper.c_1 * hyper.c_c * (2.0 - hyper.c_c);
  }

  Eigen::MatrixXd updated = decay * state.covariance;
  updated += hyper.c_1 * state.path_cov * state.path_cov.transpose();
  for (std::size_t i = 0; i < hyper.lambda; ++i) {
    double w = hyper.weights[static_cast<Eigen::Index>(i)];
    if (w < 0.0) {
      const double norm_sq =
          std::max((inv_sqrt_cov * ranked_whitened[i]).squaredNorm(), 1e-300);
      w *= n / norm_sq;
    }
    updated +=
        hyper.c_mu * w * ranked_whitened[i] * ranked_whitened[i].transpose();
  }
  updated = 0.5 * (updated + updated.transpose()).eval();

  // Margin-corrected integer dimensions are kept sampling-correct through the
  // amplitude matrix while active adaptation keeps draining their covariance
  // entries, so the spectrum drifts toward extreme conditioning. Cap the
  // condition number at 1e12 by flooring the eigenvalues relative to the
  // largest one and reconstructing; an eigenvalue negative beyond roundoff
  // still signals broken hyperparameters.
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(updated);
  const double min_eig = solver.eigenvalues().minCoeff();
  const double max_eig = solver.eigenvalues().maxCoeff();
  if (min_eig < -1e-8 * std::max(1.0, max_eig)) {
    throw std::runtime_error(
        "update_covariance: covariance lost positive definiteness "
        "(eigenvalue " + std::to_string(min_eig) + ")");
  }
  const double floor = 1e-12 * max_eig;
  if (min_eig < floor) {
    const Eigen::VectorXd floored = solver.eigenvalues().cwiseMax(floor);
    updated = solver.eigenvectors() * floored.asDiagonal() *
              solver.eigenvectors().transpose();
    updated = 0.5 * (updated + updated.transpose()).eval();
  }
  state.covariance = std::move(updated);
}

void update_stepsize(GaussianState& state, const CmaHyperparameters& hyper) {
  const double expected = expected_standard_norm(state.mean.size());
  state.sigma *= std::exp((hyper.c_sigma / hyper.d_sigma) *
                          (state.path_sigma.norm() / expected - 1.0));
}

}  // namespace mvbbo
