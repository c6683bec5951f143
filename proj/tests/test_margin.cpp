#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mvbbo/margin.hpp"

using namespace mvbbo;

namespace {

// One continuous slot plus one integer slot over the given levels; the
// integer variable sits at combined index 1.
SearchSpace margin_space(std::vector<double> levels = {-1, 0, 1}) {
  return SearchSpace::make(1, {std::move(levels)}, {});
}

GaussianState margin_state(double integer_mean, double sigma = 1.0,
                           double amplitude = 1.0, double cov = 1.0) {
  GaussianState g;
  g.mean = Eigen::VectorXd::Zero(2);
  g.mean[1] = integer_mean;
  g.sigma = sigma;
  g.covariance = Eigen::MatrixXd::Identity(2, 2);
  g.covariance(1, 1) = cov;
  g.amplitude = Eigen::VectorXd::Ones(2);
  g.amplitude[1] = amplitude;
  g.path_sigma = Eigen::VectorXd::Zero(2);
  g.path_cov = Eigen::VectorXd::Zero(2);
  g.mutation_rate = Eigen::VectorXd::Ones(1);
  return g;
}

// Re-measures the stored mutation rate of a corrected state.
double remeasure_rate(const GaussianState& g, const SearchSpace& space,
                      const ThresholdTable& table) {
  const auto p = marginal_probabilities(g, 0, space, table);
  return p.edge ? p.mutation : p.low + p.up;
}

}  // namespace

TEST_CASE("chi-squared quantile with one degree of freedom") {
  CHECK(chi2_quantile_1dof(0.0) == 0.0);
  // Phi(1) = 0.8413447..., so gamma = 2 Phi(1) - 1 maps back to 1.
  CHECK(chi2_quantile_1dof(0.6826894921) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(chi2_quantile_1dof(0.95) == doctest::Approx(3.8414588).epsilon(1e-7));
  CHECK_THROWS_AS(chi2_quantile_1dof(1.0), std::domain_error);
  CHECK_THROWS_AS(chi2_quantile_1dof(-0.1), std::domain_error);
}

TEST_CASE("normal quantile inverts the CDF to high accuracy") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(1e-12, 1.0 - 1e-12);
  for (int trial = 0; trial < 2000; ++trial) {
    const double p = u(rng);
    const double x = normal_quantile(p);
    CHECK(std::abs(normal_cdf(x) - p) < 1e-12 * std::max(p, 1.0 - p) + 1e-16);
  }
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  // Deep-tail round trip at relative accuracy well beyond 1e-10.
  for (double p : {1e-10, 1e-8, 1e-4, 0.3, 0.7, 1.0 - 1e-8}) {
    CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-10));
  }
}

TEST_CASE("marginal probabilities in the edge case") {
  auto space = margin_space();
  const auto table = build_thresholds(space);

  // Mean exactly on the single nearest threshold: both tails are 0.5.
  auto on_threshold = margin_state(-0.5);
  const auto p = marginal_probabilities(on_threshold, 0, space, table);
  CHECK(p.edge);
  CHECK(p.mutation == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("marginal probabilities in the interior case") {
  auto space = margin_space();
  const auto table = build_thresholds(space);

  auto centered = margin_state(0.0);
  const auto p = marginal_probabilities(centered, 0, space, table);
  CHECK(!p.edge);
  CHECK(p.low == doctest::Approx(0.30853753872599).epsilon(1e-10));
  CHECK(p.up == doctest::Approx(0.30853753872599).epsilon(1e-10));
  CHECK(p.low + p.mid + p.up == doctest::Approx(1.0).epsilon(1e-15));

  // Concentration: a tiny deviation pushes all mass to the middle.
  auto tight = margin_state(0.0, 1e-6);
  const auto q = marginal_probabilities(tight, 0, space, table);
  CHECK(q.low < 1e-100);
  CHECK(q.up < 1e-100);
  CHECK(q.mid == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("successful mutation detection") {
  Eigen::VectorXd encoded(3);
  encoded << 0.0, 1.0, -1.0;
  MixedSolution same;
  same.z = encoded;
  MixedSolution moved;
  moved.z = encoded;
  moved.z[1] = 2.0;

  std::vector<const MixedSolution*> all_same = {&same, &same};
  const auto none = detect_successful_mutation(all_same, 2, encoded);
  CHECK(none == std::vector<bool>{false, false, false});

  std::vector<const MixedSolution*> with_moved = {&same, &moved};
  const auto one = detect_successful_mutation(with_moved, 2, encoded);
  CHECK(one == std::vector<bool>{false, true, false});

  // mu = 1 considers only the best sample.
  const auto best_only = detect_successful_mutation(with_moved, 1, encoded);
  CHECK(best_only == std::vector<bool>{false, false, false});

  std::vector<const MixedSolution*> moved_first = {&moved, &same};
  const auto mutated_best = detect_successful_mutation(moved_first, 1, encoded);
  CHECK(mutated_best == std::vector<bool>{false, true, false});
}

TEST_CASE("edge correction is the identity when the clip is inactive") {
  auto space = margin_space();
  const auto table = build_thresholds(space);
  MarginConfig config{0.1, MarginMode::modified, false};

  // Tail mass 0.3 behind the threshold -0.5.
  const double mean = -0.5 + normal_quantile(0.3);
  auto state = margin_state(mean);
  const double amplitude_before = state.amplitude[1];

  margin_correct_edge(state, 0, false, config, space, table);
  CHECK(state.mean[1] == mean);
  CHECK(state.amplitude[1] == amplitude_before);
  CHECK(state.mutation_rate[0] == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("edge correction pulls the mean to realize the clipped rate") {
  auto space = margin_space();
  const auto table = build_thresholds(space);
  MarginConfig config{0.1, MarginMode::modified, false};

  // Tail mass 0.02 gets lifted to alpha = 0.1.
  const double mean = -0.5 + normal_quantile(0.02);
  auto state = margin_state(mean);
  margin_correct_edge(state, 0, true, config, space, table);
  CHECK(state.mutation_rate[0] == 0.1);
  CHECK(remeasure_rate(state, space, table) ==
        doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("modified edge correction caps the rate by the previous one") {
  auto space = margin_space();
  const auto table = build_thresholds(space);
  MarginConfig config{0.1, MarginMode::modified, false};

  const double mean = -0.5 + normal_quantile(0.4);
  auto state = margin_state(mean);
  state.mutation_rate[0] = 0.1;
  margin_correct_edge(state, 0, false, config, space, table);
  CHECK(state.mutation_rate[0] == 0.1);
  CHECK(remeasure_rate(state, space, table) ==
        doctest::Approx(0.1).epsilon(1e-9));

  // With a successful mutation no upper bound applies.
  auto free_state = margin_state(mean);
  free_state.mutation_rate[0] = 0.1;
  margin_correct_edge(free_state, 0, true, config, space, table);
  CHECK(free_state.mutation_rate[0] == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("edge amplitude floor makes the corrected mean reach the level") {
  auto space = margin_space();
  const auto table = build_thresholds(space);
  MarginConfig config{0.1, MarginMode::modified, true};

  // Sharply concentrated below the lower edge level: the amplitude floor
  // engages, and with rate == alpha the mean lands on the level itself.
  auto state = margin_state(-1.2, 0.01);
  margin_correct_edge(state, 0, false, config, space, table);
  CHECK(state.mutation_rate[0] == 0.1);
  const double floor_amp =
      0.5 / (0.01 * std::sqrt(chi2_quantile_1dof(0.8)));
  CHECK(state.amplitude[1] == doctest::Approx(floor_amp).epsilon(1e-12));
  CHECK(remeasure_rate(state, space, table) ==
        doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("interior correction redistributes and preserves total mass") {
  auto space = margin_space();
  const auto table = build_thresholds(space);
  MarginConfig config{0.2, MarginMode::modified, false};

  // Raw probabilities p_low = 0.001, p_up = 0.4 around thresholds +-0.5.
  const double sd = 1.0 / (normal_quantile(0.999) + normal_quantile(0.6));
  const double mean = 0.5 + sd * normal_quantile(0.4);
  auto state = margin_state(mean, sd);
  {
    const auto raw = marginal_probabilities(state, 0, space, table);
    REQUIRE(!raw.edge);
    REQUIRE(raw.low == doctest::Approx(0.001).epsilon(1e-9));
    REQUIRE(raw.up == doctest::Approx(0.4).epsilon(1e-9));
  }

  margin_correct_interior(state, 0, true, config, space, table);
  // After the clip p_low = 0.1; Delta = -0.099 / 0.799 shrinks p_up.
  const double delta = -0.099 / 0.799;
  const double expected_up = 0.4 + delta * (0.4 - 0.1);
  CHECK(state.mutation_rate[0] ==
        doctest::Approx(0.1 + expected_up).epsilon(1e-9));

  const auto corrected = marginal_probabilities(state, 0, space, table);
  CHECK(corrected.low == doctest::Approx(0.1).epsilon(1e-8));
  CHECK(corrected.up == doctest::Approx(expected_up).epsilon(1e-8));
  CHECK(corrected.low + corrected.mid + corrected.up ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("modified interior correction respects the previous-rate bound") {
  auto space = margin_space({-2, -1, 0, 1, 2});
  const auto table = build_thresholds(space);
  MarginConfig config{0.02, MarginMode::modified, false};

  auto state = margin_state(0.1, 0.8);
  state.mutation_rate[0] = 0.05;
  margin_correct_interior(state, 0, false, config, space, table);
  CHECK(state.mutation_rate[0] <= 0.05);
  CHECK(state.mutation_rate[0] >= 0.02);

  const auto corrected = marginal_probabilities(state, 0, space, table);
  CHECK(corrected.low >= 0.01 - 1e-12);
  CHECK(corrected.up >= 0.01 - 1e-12);
  CHECK(corrected.low + corrected.up ==
        doctest::Approx(state.mutation_rate[0]).epsilon(1e-9));
}

TEST_CASE("round trip: corrected states re-measure to the stored rates") {
  std::mt19937_64 rng(211);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto space = margin_space({-3, -2, -1, 0, 1, 2, 3});
  const auto table = build_thresholds(space);

  for (int trial = 0; trial < 500; ++trial) {
    const double mean = -4.0 + 8.0 * u(rng);
    const double sigma = 0.05 + 2.0 * u(rng);
    const double amplitude = 0.2 + 2.0 * u(rng);
    const double cov = 0.25 + 2.0 * u(rng);
    const bool success = u(rng) < 0.5;
    const MarginMode mode =
        u(rng) < 0.5 ? MarginMode::original : MarginMode::modified;
    MarginConfig config{0.05 + 0.3 * u(rng), mode, u(rng) < 0.5};

    auto state = margin_state(mean, sigma, amplitude, cov);
    state.mutation_rate[0] = config.alpha + (1.0 - config.alpha) * u(rng);
    margin_correct_dimension(state, 0, success, config, space, table);

    const double stored = state.mutation_rate[0];
    CHECK(remeasure_rate(state, space, table) ==
          doctest::Approx(stored).epsilon(1e-9));
    CHECK(stored >= config.alpha);
    CHECK(stored <= 1.0);
  }
}

TEST_CASE("modified mode with forced success reproduces original mode bit for bit") {
  std::mt19937_64 rng(223);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto space = margin_space({-2, -1, 0, 1, 2});
  const auto table = build_thresholds(space);

  for (int trial = 0; trial < 500; ++trial) {
    const double mean = -3.0 + 6.0 * u(rng);
    const double sigma = 0.05 + 2.0 * u(rng);
    const double amplitude = 0.2 + 2.0 * u(rng);
    const bool centering = u(rng) < 0.5;
    const double alpha = 0.05 + 0.3 * u(rng);
    const double previous = alpha + (1.0 - alpha) * u(rng);

    auto original_state = margin_state(mean, sigma, amplitude);
    original_state.mutation_rate[0] = previous;
    MarginConfig original{alpha, MarginMode::original, centering};
    margin_correct_dimension(original_state, 0, false, original, space, table);

    auto modified_state = margin_state(mean, sigma, amplitude);
    modified_state.mutation_rate[0] = previous;
    MarginConfig modified{alpha, MarginMode::modified, centering};
    margin_correct_dimension(modified_state, 0, true, modified, space, table);

    CHECK(original_state.mean[1] == modified_state.mean[1]);
    CHECK(original_state.amplitude[1] == modified_state.amplitude[1]);
    CHECK(original_state.mutation_rate[0] == modified_state.mutation_rate[0]);
  }
}

TEST_CASE("integer centering rewrites mutated coordinates") {
  auto space = margin_space();
  const auto table = build_thresholds(space);
  auto state = margin_state(0.1);

  MixedSolution mutated;
  mutated.x = Eigen::VectorXd::Zero(1);
  mutated.z = Eigen::VectorXd::Constant(1, 1.0);
  mutated.pre_encoding = Eigen::VectorXd::Zero(2);
  mutated.pre_encoding[1] = 0.8;
  mutated.whitened = (mutated.pre_encoding - state.mean)
                         .cwiseQuotient(state.amplitude) /
                     state.sigma;

  MixedSolution unmutated = mutated;
  unmutated.z[0] = 0.0;
  unmutated.pre_encoding[1] = 0.3;
  unmutated.whitened = (unmutated.pre_encoding - state.mean)
                           .cwiseQuotient(state.amplitude) /
                       state.sigma;
  const Eigen::VectorXd untouched_v = unmutated.pre_encoding;
  const Eigen::VectorXd untouched_y = unmutated.whitened;

  Eigen::VectorXd encoded(1);
  encoded << 0.0;
  std::vector<MixedSolution*> ranked = {&mutated, &unmutated};
  integer_centering(ranked, 2, state, space, encoded);

  CHECK(mutated.pre_encoding[1] == 1.0);
  CHECK(unmutated.pre_encoding == untouched_v);
  CHECK(unmutated.whitened == untouched_y);

  // v = m + sigma A y holds for the recomputed whitened vector.
  const Eigen::VectorXd reconstructed =
      state.mean +
      state.sigma * state.amplitude.cwiseProduct(mutated.whitened);
  CHECK((reconstructed - mutated.pre_encoding).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("promising alpha values") {
  CHECK(promising_alpha(1, 0) == doctest::Approx(0.27).epsilon(1e-12));
  CHECK(promising_alpha(3, 0) ==
        doctest::Approx(1.0 - std::pow(0.73, 1.0 / 3.0)).epsilon(1e-15));
  CHECK(promising_alpha(3, 0) == doctest::Approx(0.09959).epsilon(1e-3));
  CHECK(promising_alpha(3, 3) ==
        doctest::Approx(1.0 - std::pow(0.73, 1.0 / 6.0)).epsilon(1e-15));
  CHECK(promising_alpha(0, 0) == 0.0);
}

TEST_CASE("promising margin meets the binomial budget") {
  // Per-sample non-optimal probability under the converged-state assumptions.
  std::mt19937_64 rng(227);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n_in = rng() % 6;
    const std::size_t n_ca = rng() % 6 + (n_in == 0 ? 1 : 0);
    const std::size_t k = 2 + rng() % 6;
    const double alpha = promising_alpha(n_in, n_ca);
    const double q_min =
        alpha / (static_cast<double>(k) - 1.0);
    const double q_first = 1.0 - q_min * (static_cast<double>(k) - 1.0);

    double optimal = 1.0;
    for (std::size_t n = 0; n < n_in; ++n) optimal *= 1.0 - alpha;
    for (std::size_t n = 0; n < n_ca; ++n) optimal *= q_first;
    CHECK(std::abs((1.0 - optimal) - 0.27) < 1e-12);
  }

  // Binomial CDF oracle: Pr(Bin(lambda, 0.27) <= lambda - floor(lambda/2)).
  auto binomial_cdf = [](std::size_t n, double p, std::size_t upper) {
    double pmf = std::pow(1.0 - p, static_cast<double>(n));
    double cdf = pmf;
    for (std::size_t k = 1; k <= upper; ++k) {
      pmf *= static_cast<double>(n - k + 1) / static_cast<double>(k) * p /
             (1.0 - p);
      cdf += pmf;
    }
    return cdf;
  };
  const double at_six = binomial_cdf(6, 0.27, 6 - 3);
  CHECK(at_six == doctest::Approx(0.9508).epsilon(1e-3));
  for (std::size_t lambda = 6; lambda <= 64; ++lambda) {
    CHECK(binomial_cdf(lambda, 0.27, lambda - lambda / 2) >= 0.95);
  }
}
