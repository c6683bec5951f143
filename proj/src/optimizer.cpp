#include "mvbbo/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace mvbbo {

CatCmawmOptimizer::CatCmawmOptimizer(SearchSpace space, Init init,
                                     std::uint64_t seed,
                                     OptimizerSettings settings)
    : space_(std::move(space)), rng_(seed) {
  require_valid(space_);
  thresholds_ = build_thresholds(space_);

  hyper_ = settings.hyper.has_value()
               ? *settings.hyper
               : default_hyperparameters(space_.mixed_count(),
                                         space_.variable_count());

  margin_ = settings.margin;
  if (margin_.alpha <= 0.0) {
    margin_.alpha =
        promising_alpha(space_.integer_count(), space_.categorical_count());
  }

  asng_ = settings.asng;

  const auto n_mixed = static_cast<Eigen::Index>(space_.mixed_count());
  if (init.mean.size() == static_cast<Eigen::Index>(0) && n_mixed > 0) {
    std::uniform_real_distribution<double> box(init.mean_box[0],
                                               init.mean_box[1]);
    init.mean.resize(n_mixed);
    for (Eigen::Index j = 0; j < n_mixed; ++j) init.mean[j] = box(rng_);
  }
  if (init.mean.size() != n_mixed) {
    throw std::invalid_argument("initial mean has wrong dimension");
  }
  if (!(init.sigma > 0.0)) {
    throw std::invalid_argument("initial sigma must be positive");
  }

  gauss_.mean = std::move(init.mean);
  gauss_.sigma = init.sigma;
  gauss_.covariance = init.covariance.has_value()
                          ? *init.covariance
                          : Eigen::MatrixXd::Identity(n_mixed, n_mixed);
  if (gauss_.covariance.rows() != n_mixed ||
      gauss_.covariance.cols() != n_mixed) {
    throw std::invalid_argument("initial covariance has wrong dimension");
  }
  gauss_.amplitude = Eigen::VectorXd::Ones(n_mixed);
  gauss_.path_sigma = Eigen::VectorXd::Zero(n_mixed);
  gauss_.path_cov = Eigen::VectorXd::Zero(n_mixed);
  gauss_.mutation_rate = Eigen::VectorXd::Ones(
      static_cast<Eigen::Index>(space_.integer_count()));
  gauss_.iteration = 0;

  const std::size_t n_cat = space_.categorical_count();
  cat_.q.resize(n_cat);
  cat_.s.resize(n_cat);
  for (std::size_t n = 0; n < n_cat; ++n) {
    const auto k = static_cast<Eigen::Index>(space_.category_counts[n]);
    cat_.q[n] = Eigen::VectorXd::Constant(k, 1.0 / static_cast<double>(k));
    cat_.s[n] = Eigen::VectorXd::Zero(k);
  }
  if (init.q.has_value()) {
    if (init.q->size() != n_cat) {
      throw std::invalid_argument("initial q has wrong dimension count");
    }
    for (std::size_t n = 0; n < n_cat; ++n) {
      const auto& block = (*init.q)[n];
      if (block.size() != cat_.q[n].size() || block.minCoeff() < 0.0 ||
          std::abs(block.sum() - 1.0) > 1e-9) {
        throw std::invalid_argument("initial q is not on the simplex");
      }
      cat_.q[n] = block;
    }
  }
  cat_.delta = 1.0;
  cat_.gamma = 0.0;
  cat_.q_min = default_q_min(space_);
  if (settings.q_min.has_value()) {
    std::fill(cat_.q_min.begin(), cat_.q_min.end(), *settings.q_min);
  }
  for (std::size_t n = 0; n < n_cat; ++n) {
    if (cat_.q_min[n] >= 1.0 / static_cast<double>(space_.category_counts[n])) {
      throw std::invalid_argument("q_min must be below uniform probability");
    }
  }

  last_success_.assign(space_.integer_count(), false);
}

std::vector<MixedSolution> CatCmawmOptimizer::ask() {
  return sample_population(gauss_, cat_, space_, thresholds_, hyper_.lambda,
                           rng_);
}

void CatCmawmOptimizer::tell(std::vector<MixedSolution> population) {
  if (population.size() != hyper_.lambda) {
    throw std::invalid_argument("tell: expected " +
                                std::to_string(hyper_.lambda) + " solutions");
  }
  const auto n_mixed = static_cast<Eigen::Index>(space_.mixed_count());
  for (const auto& solution : population) {
    if (solution.pre_encoding.size() != n_mixed ||
        solution.whitened.size() != n_mixed) {
      throw std::invalid_argument("tell: solution missing v or y");
    }
    if (solution.fitness.size() < 1) {
      throw std::invalid_argument("tell: solution missing fitness");
    }
  }

  // Rank ascending by fitness, ties broken by sample index.
  std::vector<std::size_t> order(population.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return population[a].fitness[0] < population[b].fitness[0];
                   });
  std::vector<MixedSolution*> ranked(population.size());
  for (std::size_t i = 0; i < population.size(); ++i) {
    ranked[i] = &population[order[i]];
  }

  const bool has_gaussian = n_mixed > 0;
  const bool has_categorical = space_.categorical_count() > 0;

  if (has_gaussian) {
    const Eigen::VectorXd encoded_mean_z =
        encode_integer_part(gauss_.mean, space_, thresholds_);

    std::vector<const MixedSolution*> ranked_view(ranked.begin(), ranked.end());
    last_success_ = detect_successful_mutation(ranked_view, hyper_.mu,
                                               encoded_mean_z);

    if (margin_.centering) {
      integer_centering(ranked, hyper_.mu, gauss_, space_, encoded_mean_z);
    }

    std::vector<Eigen::VectorXd> ranked_whitened(population.size());
    for (std::size_t i = 0; i < population.size(); ++i) {
      ranked_whitened[i] = ranked[i]->whitened;
    }

    const CovarianceFactor factor = factor_covariance(gauss_.covariance);
    update_mean(gauss_, hyper_, ranked_whitened);
    const bool h_sigma =
        update_paths(gauss_, hyper_, ranked_whitened, factor.inv_sqrt);
    update_covariance(gauss_, hyper_, ranked_whitened, h_sigma,
                      factor.inv_sqrt);
    update_stepsize(gauss_, hyper_);

    if (has_categorical) {
      update_categorical_from(ranked);
    }

    // Sigma floor against the post-update covariance, then the integer margin.
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        gauss_.covariance, Eigen::EigenvaluesOnly);
    gauss_.sigma = sigma_floor(gauss_.sigma, solver.eigenvalues().minCoeff(),
                               asng_.lambda_min);
    if (has_categorical) {
      for (std::size_t n = 0; n < cat_.q.size(); ++n) {
        cat_.q[n] = q_margin_correction(cat_.q[n], cat_.q_min[n]);
      }
    }
    for (std::size_t n = 0; n < space_.integer_count(); ++n) {
      margin_correct_dimension(gauss_, n, last_success_[n], margin_, space_,
                               thresholds_);
    }
  } else if (has_categorical) {
    update_categorical_from(ranked);
    for (std::size_t n = 0; n < cat_.q.size(); ++n) {
      cat_.q[n] = q_margin_correction(cat_.q[n], cat_.q_min[n]);
    }
  }

  gauss_.iteration += 1;
  evaluations_ += population.size();
  for (const auto& solution : population) {
    if (!best_ || solution.fitness[0] < best_->fitness[0]) {
      best_ = solution;
      last_improvement_evaluations_ = evaluations_;
    }
  }

#ifndef NDEBUG
  check_invariants();
#endif
}

void CatCmawmOptimizer::update_categorical_from(
    const std::vector<MixedSolution*>& ranked) {
  std::vector<const MixedSolution*> view(ranked.begin(), ranked.end());
  const auto gradient =
      natural_gradient(cat_.q, view, hyper_.mu, hyper_.weights);
  const double norm_sq = fisher_norm_sq(cat_.q, gradient);
  const auto scaled = fisher_sqrt_gradient(cat_.q, gradient);
  update_q(cat_, gradient, std::sqrt(norm_sq));
  update_trust_region(cat_, scaled, norm_sq, asng_.alpha_snr);
}

CatCmawmOptimizer::StopReason CatCmawmOptimizer::should_stop(
    std::size_t evaluation_budget, std::optional<double> target_fitness) const {
  if (evaluations_ >= evaluation_budget) return StopReason::budget;
  if (target_fitness && best_ && best_->fitness[0] <= *target_fitness) {
    return StopReason::target;
  }
  const bool underflow =
      (space_.mixed_count() > 0 && gauss_.sigma < 1e-15) ||
      (space_.categorical_count() > 0 && cat_.delta < 1e-15);
  if (underflow &&
      evaluations_ >= last_improvement_evaluations_ + 100 * hyper_.lambda) {
    return StopReason::stagnation;
  }
  return StopReason::none;
}

void CatCmawmOptimizer::check_invariants() const {
  if (!(gauss_.sigma > 0.0)) {
    throw std::logic_error("invariant violated: sigma <= 0");
  }
  if (space_.mixed_count() > 0) {
    if (gauss_.amplitude.minCoeff() <= 0.0) {
      throw std::logic_error("invariant violated: amplitude <= 0");
    }
    const double asymmetry =
        (gauss_.covariance - gauss_.covariance.transpose())
            .cwiseAbs()
            .maxCoeff();
    if (asymmetry > 1e-12) {
      throw std::logic_error("invariant violated: covariance asymmetric");
    }
  }
  for (std::size_t n = 0; n < space_.integer_count(); ++n) {
    const double rate = gauss_.mutation_rate[static_cast<Eigen::Index>(n)];
    if (!(rate > 0.0 && rate <= 1.0)) {
      throw std::logic_error("invariant violated: p_mut outside (0, 1]");
    }
  }
  for (std::size_t n = 0; n < cat_.q.size(); ++n) {
    if (std::abs(cat_.q[n].sum() - 1.0) > 1e-12) {
      throw std::logic_error("invariant violated: q off the simplex");
    }
    if (gauss_.iteration > 0 && cat_.q[n].minCoeff() < cat_.q_min[n] - 1e-15) {
      throw std::logic_error("invariant violated: q below margin floor");
    }
  }
  if (!(cat_.delta > 0.0) || cat_.gamma < 0.0) {
    throw std::logic_error("invariant violated: trust region state");
  }
}

}  // namespace mvbbo
