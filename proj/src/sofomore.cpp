#include "mvbbo/sofomore.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mvbbo {

BoxRepair box_transform(const Eigen::VectorXd& x,
                        const std::vector<std::array<double, 2>>& bounds,
                        double weight) {
  BoxRepair result;
  result.repaired = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const auto& b = bounds[static_cast<std::size_t>(k)];
    const double clamped = std::clamp(x[k], b[0], b[1]);
    const double overshoot = (x[k] - clamped) / (b[1] - b[0]);
    result.penalty += weight * overshoot * overshoot;
    result.repaired[k] = clamped;
  }
  return result;
}

Eigen::VectorXd evaluate_solution(const ObjectiveFunction& objective,
                                  const MixedSolution& solution,
                                  double penalty_weight) {
  const auto& bounds = objective.space().continuous_bounds;
  if (!bounds) return objective.evaluate(solution);
  MixedSolution repaired = solution;
  const BoxRepair repair = box_transform(solution.x, *bounds, penalty_weight);
  repaired.x = repair.repaired;
  Eigen::VectorXd fitness = objective.evaluate(repaired);
  fitness.array() += repair.penalty;
  return fitness;
}

MixedSolution incumbent(const CatCmawmOptimizer& kernel, std::mt19937_64& rng) {
  const auto& space = kernel.space();
  MixedSolution solution;
  encode(kernel.gaussian().mean, space, kernel.thresholds(), solution.x,
         solution.z);
  solution.pre_encoding = kernel.gaussian().mean;
  solution.whitened = Eigen::VectorXd::Zero(kernel.gaussian().mean.size());
  solution.c.resize(space.categorical_count());
  for (std::size_t n = 0; n < space.categorical_count(); ++n) {
    const auto& q = kernel.categorical().q[n];
    const double top = q.maxCoeff();
    std::vector<Eigen::Index> winners;
    for (Eigen::Index k = 0; k < q.size(); ++k) {
      if (q[k] == top) winners.push_back(k);
    }
    Eigen::Index chosen = winners.front();
    if (winners.size() > 1) {
      std::uniform_int_distribution<std::size_t> pick(0, winners.size() - 1);
      chosen = winners[pick(rng)];
    }
    solution.c[n] = Eigen::VectorXd::Zero(q.size());
    solution.c[n][chosen] = 1.0;
  }
  return solution;
}

SofomoreOptimizer::SofomoreOptimizer(const ObjectiveFunction& objective,
                                     std::size_t kernel_count,
                                     Eigen::Vector2d reference,
                                     std::uint64_t seed, KernelInit init,
                                     OptimizerSettings settings)
    : objective_(objective), archive_(std::move(reference)), rng_(seed) {
  if (objective.arity() != 2) {
    throw std::invalid_argument(
        "SofomoreOptimizer: exact hypervolume machinery supports exactly 2 "
        "objectives, got " + std::to_string(objective.arity()));
  }
  if (kernel_count < 1) {
    throw std::invalid_argument("SofomoreOptimizer: need at least one kernel");
  }

  std::uniform_int_distribution<std::uint64_t> reseed;
  kernels_.reserve(kernel_count);
  for (std::size_t i = 0; i < kernel_count; ++i) {
    CatCmawmOptimizer::Init kernel_init;
    kernel_init.mean_box = init.mean_box;
    kernel_init.sigma = init.sigma;
    kernels_.emplace_back(objective.space(), kernel_init, reseed(rng_),
                          settings);
  }

  incumbents_.reserve(kernel_count);
  incumbent_objectives_.reserve(kernel_count);
  for (auto& kernel : kernels_) {
    MixedSolution s = incumbent(kernel, rng_);
    s.fitness = evaluate_solution(objective_, s, penalty_weight_);
    ++evaluations_;
    archive_.insert(Eigen::Vector2d(s.fitness[0], s.fitness[1]));
    incumbent_objectives_.emplace_back(s.fitness[0], s.fitness[1]);
    incumbents_.push_back(std::move(s));
  }
}

void SofomoreOptimizer::step() {
  std::vector<std::size_t> order(kernels_.size());
  std::iota(order.begin(), order.end(), 0u);
  std::shuffle(order.begin(), order.end(), rng_);

  for (const std::size_t k : order) {
    CatCmawmOptimizer& kernel = kernels_[k];

    std::vector<Eigen::Vector2d> others;
    others.reserve(kernels_.size() - 1);
    for (std::size_t j = 0; j < kernels_.size(); ++j) {
      if (j != k) others.push_back(incumbent_objectives_[j]);
    }

    std::vector<MixedSolution> population = kernel.ask();
    for (auto& solution : population) {
      const Eigen::VectorXd objectives =
          evaluate_solution(objective_, solution, penalty_weight_);
      ++evaluations_;
      const Eigen::Vector2d point(objectives[0], objectives[1]);
      archive_.insert(point);
      const double fitness = uhvi(point, others, archive_.reference());
      // The kernel minimizes, so the improvement is negated.
      solution.fitness = Eigen::VectorXd::Constant(1, -fitness);
    }
    kernel.tell(std::move(population));

    MixedSolution refreshed = incumbent(kernel, rng_);
    refreshed.fitness = evaluate_solution(objective_, refreshed, penalty_weight_);
    ++evaluations_;
    const Eigen::Vector2d point(refreshed.fitness[0], refreshed.fitness[1]);
    archive_.insert(point);
    incumbent_objectives_[k] = point;
    incumbents_[k] = std::move(refreshed);
  }
}

}  // namespace mvbbo
