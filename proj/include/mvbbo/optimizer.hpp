#ifndef MVBBO_OPTIMIZER_HPP
#define MVBBO_OPTIMIZER_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "mvbbo/categorical.hpp"
#include "mvbbo/cma.hpp"
#include "mvbbo/margin.hpp"
#include "mvbbo/sampling.hpp"
#include "mvbbo/search_space.hpp"

namespace mvbbo {

/// Trust-region adaptation constants for the categorical part.
struct AsngConfig {
  double alpha_snr = 1.5;
  double lambda_min = 1e-30;  ///< eigenvalue floor behind the sigma post-process
};

/// Optional overrides; anything unset falls back to the promising formulas
/// and the standard defaults.
struct OptimizerSettings {
  MarginConfig margin;  ///< alpha <= 0 requests the promising value
  AsngConfig asng;
  std::optional<double> q_min;  ///< uniform override of the categorical floor
  std::optional<CmaHyperparameters> hyper;
};

/// Single-objective mixed-variable optimizer behind an ask/tell interface.
/// Minimizes; maximizing callers negate their fitness.
class CatCmawmOptimizer {
 public:
  /// Initial distribution parameters. An empty mean vector requests uniform
  /// sampling from `mean_box` with the optimizer's own generator.
  struct Init {
    Eigen::VectorXd mean;
    std::array<double, 2> mean_box{0.0, 1.0};
    double sigma = 1.0;
    std::optional<Eigen::MatrixXd> covariance;        ///< default identity
    std::optional<std::vector<Eigen::VectorXd>> q;    ///< default uniform
  };

  CatCmawmOptimizer(SearchSpace space, Init init, std::uint64_t seed,
                    OptimizerSettings settings = {});

  /// Samples lambda fresh candidate solutions; only the generator advances.
  std::vector<MixedSolution> ask();

  /// Consumes an evaluated population (fitness[0] is the ranking key) and
  /// performs one full distribution update.
  void tell(std::vector<MixedSolution> population);

  enum class StopReason { none, budget, target, stagnation };
  StopReason should_stop(std::size_t evaluation_budget,
                         std::optional<double> target_fitness) const;

  const SearchSpace& space() const { return space_; }
  const ThresholdTable& thresholds() const { return thresholds_; }
  const GaussianState& gaussian() const { return gauss_; }
  const CategoricalState& categorical() const { return cat_; }
  const CmaHyperparameters& hyper() const { return hyper_; }
  const MarginConfig& margin() const { return margin_; }
  long iteration() const { return gauss_.iteration; }
  std::size_t evaluations() const { return evaluations_; }
  bool has_best() const { return best_.has_value(); }
  const MixedSolution& best() const { return *best_; }
  double best_fitness() const { return (*best_).fitness[0]; }
  std::mt19937_64& rng() { return rng_; }

  /// Success flags of the most recent tell, one per integer dimension.
  const std::vector<bool>& last_successful_mutation() const {
    return last_success_;
  }

  /// Verifies every cross-module invariant; throws on violation.
  void check_invariants() const;

 private:
  void update_categorical_from(const std::vector<MixedSolution*>& ranked);

  SearchSpace space_;
  ThresholdTable thresholds_;
  CmaHyperparameters hyper_;
  MarginConfig margin_;
  AsngConfig asng_;
  GaussianState gauss_;
  CategoricalState cat_;
  std::mt19937_64 rng_;
  std::size_t evaluations_ = 0;
  std::size_t last_improvement_evaluations_ = 0;
  std::optional<MixedSolution> best_;
  std::vector<bool> last_success_;
};

}  // namespace mvbbo

#endif  // MVBBO_OPTIMIZER_HPP
