#ifndef MVBBO_SOFOMORE_HPP
#define MVBBO_SOFOMORE_HPP

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "mvbbo/optimizer.hpp"
#include "mvbbo/pareto.hpp"
#include "mvbbo/search_space.hpp"

namespace mvbbo {

/// Coordinate-wise clamp of the continuous part to its box plus a quadratic
/// penalty on the normalized overshoot.
struct BoxRepair {
  Eigen::VectorXd repaired;
  double penalty = 0.0;
};

BoxRepair box_transform(const Eigen::VectorXd& x,
                        const std::vector<std::array<double, 2>>& bounds,
                        double weight = 1.0);

/// Evaluates a solution, applying the box-constraint handling when the space
/// carries continuous bounds: the objective sees the repaired x and the
/// penalty is added to every objective component.
Eigen::VectorXd evaluate_solution(const ObjectiveFunction& objective,
                                  const MixedSolution& solution,
                                  double penalty_weight = 1.0);

/// The kernel's current best estimate of an optimum: Enc(m) for the
/// continuous and integer parts, argmax of q per categorical dimension with
/// uniform tie-breaking.
MixedSolution incumbent(const CatCmawmOptimizer& kernel, std::mt19937_64& rng);

/// Bi-objective optimizer: p CatCMAwM kernels updated in randomized order,
/// each told the negated uncrowded hypervolume improvement of its samples
/// against the other kernels' incumbents.
class SofomoreOptimizer {
 public:
  struct KernelInit {
    std::array<double, 2> mean_box{0.0, 1.0};
    double sigma = 1.0;
  };

  SofomoreOptimizer(const ObjectiveFunction& objective,
                    std::size_t kernel_count, Eigen::Vector2d reference,
                    std::uint64_t seed, KernelInit init,
                    OptimizerSettings settings = {});

  /// One full sweep over all kernels; costs kernel_count * (lambda + 1)
  /// evaluations.
  void step();

  const ParetoArchive& archive() const { return archive_; }
  std::size_t evaluations() const { return evaluations_; }
  const std::vector<CatCmawmOptimizer>& kernels() const { return kernels_; }
  const std::vector<Eigen::Vector2d>& incumbent_objectives() const {
    return incumbent_objectives_;
  }

 private:
  const ObjectiveFunction& objective_;
  ParetoArchive archive_;
  std::vector<CatCmawmOptimizer> kernels_;
  std::vector<MixedSolution> incumbents_;
  std::vector<Eigen::Vector2d> incumbent_objectives_;
  std::mt19937_64 rng_;
  std::size_t evaluations_ = 0;
  double penalty_weight_ = 1.0;
};

}  // namespace mvbbo

#endif  // MVBBO_SOFOMORE_HPP
