#include "mvbbo/margin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mvbbo {

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

namespace {

// Acklam's rational approximation of the inverse normal CDF.
double acklam_quantile(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double low = 0.02425;
  if (p < low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - low) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
             c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
          a[5]) *
         q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    throw std::domain_error("normal_quantile: p outside [0, 1]");
  }
  double x = acklam_quantile(p);
  // One Halley refinement against the CDF.
  const double e = normal_cdf(x) - p;
  const double u =
      e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

double chi2_quantile_1dof(double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::domain_error("chi2_quantile_1dof: gamma outside [0, 1)");
  }
  const double z = normal_quantile(0.5 * (1.0 + gamma));
  return z * z;
}

MarginalProbabilities marginal_probabilities(const GaussianState& gauss,
                                             std::size_t dim,
                                             const SearchSpace& space,
                                             const ThresholdTable& table) {
  const auto slot = static_cast<Eigen::Index>(space.integer_slot[dim]);
  const double mean = gauss.mean[slot];
  const double deviation = gauss.sigma * gauss.amplitude[slot] *
                           std::sqrt(gauss.covariance(slot, slot));
  const NearestThresholds nearest =
      nearest_thresholds(mean, dim, space, table);

  MarginalProbabilities result;
  if (nearest.edge) {
    result.edge = true;
    const double t = (nearest.nearest - mean) / deviation;
    result.mutation = std::min(normal_cdf(t), normal_cdf(-t));
    return result;
  }
  result.low = normal_cdf((nearest.lower - mean) / deviation);
  result.up = normal_cdf((mean - nearest.upper) / deviation);
  result.mid = 1.0 - result.low - result.up;
  return result;
}

std::vector<bool> detect_successful_mutation(
    const std::vector<const MixedSolution*>& ranked, std::size_t mu,
    const Eigen::VectorXd& encoded_mean_z) {
  std::vector<bool> flags(static_cast<std::size_t>(encoded_mean_z.size()),
                          false);
  for (std::size_t i = 0; i < mu; ++i) {
    for (Eigen::Index n = 0; n < encoded_mean_z.size(); ++n) {
      if (ranked[i]->z[n] != encoded_mean_z[n]) {
        flags[static_cast<std::size_t>(n)] = true;
      }
    }
  }
  return flags;
}

namespace {

double sign_of(double value) {
  if (value > 0.0) return 1.0;
  if (value < 0.0) return -1.0;
  return 0.0;
}

}  // namespace

MarginCorrection margin_correct_edge(GaussianState& gauss, std::size_t dim,
                                     bool successful_mutation,
                                     const MarginConfig& config,
                                     const SearchSpace& space,
                                     const ThresholdTable& table) {
  const auto slot = static_cast<Eigen::Index>(space.integer_slot[dim]);
  const NearestThresholds nearest =
      nearest_thresholds(gauss.mean[slot], dim, space, table);
  const double threshold = nearest.nearest;
  const double root_cov = std::sqrt(gauss.covariance(slot, slot));

  const double t =
      (threshold - gauss.mean[slot]) /
      (gauss.sigma * gauss.amplitude[slot] * root_cov);
  const double computed = std::min(normal_cdf(t), normal_cdf(-t));

  double rate = successful_mutation
                    ? std::max(config.alpha, computed)
                    : std::max(config.alpha,
                               std::min(computed, gauss.mutation_rate[
                                   static_cast<Eigen::Index>(dim)]));

  bool amplitude_changed = false;
  if (config.centering) {
    const double encoded = encode_level(gauss.mean[slot],
                                        space.integer_levels[dim],
                                        table.thresholds[dim]);
    const double floor =
        std::abs(encoded - threshold) /
        (gauss.sigma * root_cov *
         std::sqrt(chi2_quantile_1dof(1.0 - 2.0 * config.alpha)));
    if (floor > gauss.amplitude[slot]) {
      gauss.amplitude[slot] = floor;
      amplitude_changed = true;
    }
  }

  // When the clip left the rate untouched and the amplitude is unchanged, the
  // mean correction is the identity.
  if (rate != computed || amplitude_changed) {
    gauss.mean[slot] =
        threshold +
        sign_of(gauss.mean[slot] - threshold) * gauss.sigma *
            gauss.amplitude[slot] *
            std::sqrt(gauss.covariance(slot, slot) *
                      chi2_quantile_1dof(1.0 - 2.0 * rate));
  }
  gauss.mutation_rate[static_cast<Eigen::Index>(dim)] = rate;
  MarginCorrection result;
  result.edge = true;
  result.mutation = rate;
  return result;
}

MarginCorrection margin_correct_interior(GaussianState& gauss, std::size_t dim,
                                         bool successful_mutation,
                                         const MarginConfig& config,
                                         const SearchSpace& space,
                                         const ThresholdTable& table) {
  const auto slot = static_cast<Eigen::Index>(space.integer_slot[dim]);
  const NearestThresholds nearest =
      nearest_thresholds(gauss.mean[slot], dim, space, table);
  const double root_cov = std::sqrt(gauss.covariance(slot, slot));
  const double deviation = gauss.sigma * gauss.amplitude[slot] * root_cov;

  double low = normal_cdf((nearest.lower - gauss.mean[slot]) / deviation);
  double up = normal_cdf((gauss.mean[slot] - nearest.upper) / deviation);
  double mid = 1.0 - low - up;
  const double previous = gauss.mutation_rate[static_cast<Eigen::Index>(dim)];
  const double half_alpha = 0.5 * config.alpha;

  bool clipped = false;
  if (low < half_alpha) { low = half_alpha; clipped = true; }
  if (up < half_alpha) { up = half_alpha; clipped = true; }

  double mid_floor = half_alpha;
  if (!successful_mutation) {
    mid_floor = 1.0 - previous;
    if (mid < mid_floor) { mid = mid_floor; clipped = true; }
  }

  if (clipped) {
    const double sum = low + up + mid;
    const double denominator = sum - config.alpha - mid_floor;
    const double delta =
        denominator > 0.0 ? (1.0 - sum) / denominator : 0.0;
    low += delta * (low - half_alpha);
    up += delta * (up - half_alpha);

    const double root_up = std::sqrt(chi2_quantile_1dof(1.0 - 2.0 * up));
    const double root_low = std::sqrt(chi2_quantile_1dof(1.0 - 2.0 * low));
    gauss.mean[slot] =
        (nearest.lower * root_up + nearest.upper * root_low) /
        (root_up + root_low);
    gauss.amplitude[slot] = (nearest.upper - nearest.lower) /
                            (gauss.sigma * root_cov * (root_up + root_low));
  }

  // The paper guarantees alpha <= low + up and, without a successful
  // mutation, low + up <= previous; enforce both against roundoff so the
  // stored rate satisfies the bounds exactly.
  double rate = std::max(config.alpha, low + up);
  if (!successful_mutation) {
    rate = std::min(rate, std::max(config.alpha, previous));
  }
  gauss.mutation_rate[static_cast<Eigen::Index>(dim)] = rate;
  MarginCorrection result;
  result.edge = false;
  result.low = low;
  result.up = up;
  result.mutation = rate;
  return result;
}

MarginCorrection margin_correct_dimension(GaussianState& gauss,
                                          std::size_t dim,
                                          bool successful_mutation,
                                          const MarginConfig& config,
                                          const SearchSpace& space,
                                          const ThresholdTable& table) {
  // Original mode applies the success-case rules unconditionally.
  const bool flag =
      config.mode == MarginMode::original ? true : successful_mutation;
  const auto slot = static_cast<Eigen::Index>(space.integer_slot[dim]);
  const NearestThresholds nearest =
      nearest_thresholds(gauss.mean[slot], dim, space, table);
  if (nearest.edge) {
    return margin_correct_edge(gauss, dim, flag, config, space, table);
  }
  return margin_correct_interior(gauss, dim, flag, config, space, table);
}

void integer_centering(std::vector<MixedSolution*>& ranked, std::size_t mu,
                       const GaussianState& gauss, const SearchSpace& space,
                       const Eigen::VectorXd& encoded_mean_z) {
  for (std::size_t i = 0; i < mu; ++i) {
    MixedSolution& solution = *ranked[i];
    bool changed = false;
    for (std::size_t n = 0; n < space.integer_count(); ++n) {
      const auto idx = static_cast<Eigen::Index>(n);
      if (solution.z[idx] != encoded_mean_z[idx]) {
        solution.pre_encoding[static_cast<Eigen::Index>(
            space.integer_slot[n])] = solution.z[idx];
        changed = true;
      }
    }
    if (changed) {
      solution.whitened = (solution.pre_encoding - gauss.mean)
                              .cwiseQuotient(gauss.amplitude) /
                          gauss.sigma;
    }
  }
}

double promising_alpha(std::size_t n_integer, std::size_t n_categorical) {
  const std::size_t discrete = n_integer + n_categorical;
  if (discrete == 0) return 0.0;
  return 1.0 - std::pow(0.73, 1.0 / static_cast<double>(discrete));
}

}  // namespace mvbbo
