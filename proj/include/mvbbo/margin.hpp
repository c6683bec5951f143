#ifndef MVBBO_MARGIN_HPP
#define MVBBO_MARGIN_HPP

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "mvbbo/cma.hpp"
#include "mvbbo/sampling.hpp"
#include "mvbbo/search_space.hpp"

namespace mvbbo {

enum class MarginMode { original, modified };

/// Margin-correction configuration. `alpha` is the margin value in (0, 0.5);
/// `modified` adds the mutation-rate upper bound for dimensions without a
/// successful integer mutation; `centering` enables integer centering and the
/// edge-case amplitude floor that goes with it.
struct MarginConfig {
  double alpha = 0.0;
  MarginMode mode = MarginMode::modified;
  bool centering = true;
};

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile, accurate to near machine precision
/// (rational approximation refined by one Halley step).
double normal_quantile(double p);

/// gamma-quantile of the chi-squared distribution with one degree of freedom:
/// (Phi^{-1}((1 + gamma) / 2))^2. Requires 0 <= gamma < 1.
double chi2_quantile_1dof(double gamma);

/// Marginal probabilities of one integer coordinate of v ~ N(m, sigma^2 ACA).
/// Edge levels carry a single mutation probability; interior levels carry the
/// (low, mid, up) split across the two bracketing thresholds.
struct MarginalProbabilities {
  bool edge = false;
  double mutation = 0.0;  ///< edge: min tail mass across the nearest threshold
  double low = 0.0;       ///< interior: Pr(v <= lower threshold)
  double mid = 0.0;
  double up = 0.0;        ///< interior: Pr(v > upper threshold)
};

MarginalProbabilities marginal_probabilities(const GaussianState& gauss,
                                             std::size_t dim,
                                             const SearchSpace& space,
                                             const ThresholdTable& table);

/// flag[n] is true iff some top-mu solution's integer value differs from the
/// encoded mean Enc(m^t) in dimension n. `encoded_mean_z` holds the level
/// values of Enc(m^t) and must be captured before the mean update.
std::vector<bool> detect_successful_mutation(
    const std::vector<const MixedSolution*>& ranked, std::size_t mu,
    const Eigen::VectorXd& encoded_mean_z);

/// Probabilities realized by a margin correction, for verification against a
/// re-measurement of the corrected state.
struct MarginCorrection {
  bool edge = false;
  double mutation = 0.0;  ///< stored rate: edge tail mass, or low + up
  double low = 0.0;       ///< interior only
  double up = 0.0;        ///< interior only
};

/// Edge-level margin correction for one dimension: clips the mutation rate
/// (lower bound alpha; in modified mode without a successful mutation also the
/// previous rate as an upper bound), optionally floors the amplitude, and
/// moves the mean coordinate so the clipped rate is realized.
MarginCorrection margin_correct_edge(GaussianState& gauss, std::size_t dim,
                                     bool successful_mutation,
                                     const MarginConfig& config,
                                     const SearchSpace& space,
                                     const ThresholdTable& table);

/// Interior-level margin correction for one dimension: clips the two tail
/// probabilities to alpha/2 (in modified mode without a successful mutation
/// also bounds their sum by the previous rate via the middle mass),
/// redistributes, and rewrites the mean coordinate and amplitude so the
/// corrected probabilities are realized.
MarginCorrection margin_correct_interior(GaussianState& gauss, std::size_t dim,
                                         bool successful_mutation,
                                         const MarginConfig& config,
                                         const SearchSpace& space,
                                         const ThresholdTable& table);

/// Dispatches to the edge or interior correction based on Enc(m) at `dim`.
MarginCorrection margin_correct_dimension(GaussianState& gauss,
                                          std::size_t dim,
                                          bool successful_mutation,
                                          const MarginConfig& config,
                                          const SearchSpace& space,
                                          const ThresholdTable& table);

/// Integer centering: for each top-mu solution whose integer value mutated
/// away from Enc(m^t), the pre-encoding coordinate is replaced by the level
/// value itself and the whitened vector is recomputed as A^{-1}(v - m)/sigma.
/// Must run before any Gaussian state update.
void integer_centering(std::vector<MixedSolution*>& ranked, std::size_t mu,
                       const GaussianState& gauss, const SearchSpace& space,
                       const Eigen::VectorXd& encoded_mean_z);

/// Promising margin 1 - 0.73^{1/(N_in + N_ca)}. Returns 0 when there are no
/// discrete variables (margin machinery disabled).
double promising_alpha(std::size_t n_integer, std::size_t n_categorical);

}  // namespace mvbbo

#endif  // MVBBO_MARGIN_HPP
