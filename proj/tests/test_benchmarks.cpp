#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mvbbo/benchmarks.hpp"
#include "mvbbo/sampling.hpp"

using namespace mvbbo;

namespace {

MixedSolution solution_of(const SearchSpace& space, Eigen::VectorXd x,
                          Eigen::VectorXd z,
                          const std::vector<std::size_t>& categories) {
  MixedSolution s;
  s.x = std::move(x);
  s.z = std::move(z);
  for (std::size_t n = 0; n < categories.size(); ++n) {
    s.c.push_back(one_hot(categories[n] + 1, space.category_counts[n]));
  }
  return s;
}

MixedSolution random_solution(const SearchSpace& space, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  MixedSolution s;
  s.x.resize(static_cast<Eigen::Index>(space.continuous_count));
  for (auto& value : s.x.reshaped()) value = u(rng);
  s.z.resize(static_cast<Eigen::Index>(space.integer_count()));
  for (std::size_t n = 0; n < space.integer_count(); ++n) {
    const auto& levels = space.integer_levels[n];
    s.z[static_cast<Eigen::Index>(n)] = levels[rng() % levels.size()];
  }
  for (std::size_t n = 0; n < space.categorical_count(); ++n) {
    s.c.push_back(one_hot(rng() % space.category_counts[n] + 1,
                          space.category_counts[n]));
  }
  return s;
}

}  // namespace

TEST_CASE("SphereIntCOM evaluation") {
  const auto spec = default_single_spec("SphereIntCOM", 2, 2, 2);
  const auto objective = make_single(spec);
  const auto& space = objective->space();

  const auto optimum = solution_of(space, Eigen::VectorXd::Zero(2),
                                   Eigen::VectorXd::Zero(2), {0, 0});
  CHECK(objective->evaluate(optimum)[0] == 0.0);

  Eigen::VectorXd x(2);
  x << 1.0, 0.0;
  Eigen::VectorXd z(2);
  z << 2.0, -1.0;
  const auto sample = solution_of(space, x, z, {0, 0});
  CHECK(objective->evaluate(sample)[0] == doctest::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("EllipsoidIntCLO weights integers more than continuous variables") {
  const auto spec = default_single_spec("EllipsoidIntCLO", 2, 2, 2);
  const auto objective = make_single(spec);
  const auto& space = objective->space();

  // Exponents over N_co + N_in - 1 = 3: x gets 10^0, 10^2; z gets 10^4, 10^6.
  Eigen::VectorXd x(2);
  x << 1.0, 1.0;
  const auto continuous_only = solution_of(space, x, Eigen::VectorXd::Zero(2),
                                           {0, 0});
  CHECK(objective->evaluate(continuous_only)[0] ==
        doctest::Approx(1.0 + 100.0).epsilon(1e-12));

  Eigen::VectorXd z(2);
  z << 1.0, 1.0;
  const auto integer_only = solution_of(space, Eigen::VectorXd::Zero(2), z,
                                        {0, 0});
  CHECK(objective->evaluate(integer_only)[0] ==
        doctest::Approx(1e4 + 1e6).epsilon(1e-12));
}

TEST_CASE("REllipsoidIntCLO swaps the exponent blocks") {
  const auto spec = default_single_spec("REllipsoidIntCLO", 2, 2, 2);
  const auto objective = make_single(spec);
  const auto& space = objective->space();

  Eigen::VectorXd x(2);
  x << 1.0, 1.0;
  const auto continuous_only = solution_of(space, x, Eigen::VectorXd::Zero(2),
                                           {0, 0});
  CHECK(objective->evaluate(continuous_only)[0] ==
        doctest::Approx(1e4 + 1e6).epsilon(1e-12));
}

TEST_CASE("leading-ones term counts the unbroken prefix") {
  const auto spec = default_single_spec("EllipsoidIntCLO", 1, 1, 3);
  const auto objective = make_single(spec);
  const auto& space = objective->space();
  const Eigen::VectorXd zero1 = Eigen::VectorXd::Zero(1);

  CHECK(objective->evaluate(solution_of(space, zero1, zero1, {0, 0, 0}))[0] ==
        0.0);
  // Prefix of length 1: credit 1 of 3.
  CHECK(objective->evaluate(solution_of(space, zero1, zero1, {0, 1, 0}))[0] ==
        doctest::Approx(2.0).epsilon(1e-15));
  // Broken at the first position: no credit at all.
  CHECK(objective->evaluate(solution_of(space, zero1, zero1, {1, 0, 0}))[0] ==
        doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("MVProximity couples all three variable types") {
  const auto spec = default_single_spec("MVProximity", 2, 2, 2);
  const auto objective = make_single(spec);
  const auto& space = objective->space();

  const auto optimum = solution_of(space, Eigen::VectorXd::Zero(2),
                                   Eigen::VectorXd::Zero(2), {0, 0});
  CHECK(objective->evaluate(optimum)[0] == 0.0);

  // Category index 2 (0-based) gives zeta = 2/5; x = z = 3 * 2/5 = 1.2
  // matches it exactly in both terms, leaving only the zeta sum.
  Eigen::VectorXd matched(2);
  matched << 1.2, 1.2;
  Eigen::VectorXd z(2);
  z << 1.2, 1.2;  // off-grid level values are fine for direct evaluation
  const auto aligned = solution_of(space, matched, z, {2, 2});
  CHECK(objective->evaluate(aligned)[0] ==
        doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("MVProximity rejects mismatched dimensions") {
  const auto spec = default_single_spec("MVProximity", 2, 3, 2);
  CHECK_THROWS_AS(make_single(spec), std::invalid_argument);
}

TEST_CASE("EllipsoidInt rejects categorical dimensions") {
  const auto spec = default_single_spec("EllipsoidInt", 2, 2, 1);
  CHECK_THROWS_AS(make_single(spec), std::invalid_argument);
}

TEST_CASE("unknown names are rejected") {
  const auto spec = default_single_spec("NoSuchFunction", 2, 2, 2);
  CHECK_THROWS_AS(make_single(spec), std::invalid_argument);
  CHECK_THROWS_AS(benchmark_arity("NoSuchFunction"), std::invalid_argument);
}

TEST_CASE("DSIntLFTL evaluation at the two corner solutions") {
  const auto spec = default_bi_spec("DSIntLFTL", 3, 3, 3);
  const auto objective = make_bi(spec);
  const auto& space = objective->space();
  REQUIRE(objective->arity() == 2);

  const auto first_corner = solution_of(space, Eigen::VectorXd::Zero(3),
                                        Eigen::VectorXd::Zero(3), {0, 0, 0});
  const Eigen::VectorXd f_first = objective->evaluate(first_corner);
  CHECK(f_first[0] == 0.0);
  CHECK(f_first[1] == doctest::Approx(3.0).epsilon(1e-15));

  Eigen::VectorXd tens = Eigen::VectorXd::Constant(3, 10.0);
  const auto last_corner = solution_of(space, tens, tens, {4, 4, 4});
  const Eigen::VectorXd f_last = objective->evaluate(last_corner);
  CHECK(f_last[1] == 0.0);
  CHECK(f_last[0] == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("DSIntLFTL categorical parts exclude each other off the prefix-suffix set") {
  // Exhaustive enumeration at N_ca = 3, K = 2. The categorical losses sum to
  // at least 1, with equality exactly on first^a last^(3-a) patterns.
  BenchmarkSpec spec = default_bi_spec("DSIntLFTL", 1, 1, 3);
  spec.categories = 2;
  const auto objective = make_bi(spec);
  const auto& space = objective->space();
  const Eigen::VectorXd zero1 = Eigen::VectorXd::Zero(1);

  for (std::size_t mask = 0; mask < 8; ++mask) {
    std::vector<std::size_t> categories(3);
    for (std::size_t n = 0; n < 3; ++n) categories[n] = (mask >> n) & 1u;
    const auto sample = solution_of(space, zero1, zero1, categories);
    const Eigen::VectorXd f = objective->evaluate(sample);
    // Continuous and integer parts at zero contribute f1 += 0, f2 += 2.
    const double cat1 = f[0];
    const double cat2 = f[1] - 2.0;
    CHECK(cat1 + cat2 >= 1.0 - 1e-15);

    bool prefix_suffix = true;
    bool seen_last = false;
    for (std::size_t n = 0; n < 3; ++n) {
      if (categories[n] == 1) seen_last = true;
      if (seen_last && categories[n] == 0) prefix_suffix = false;
    }
    if (prefix_suffix) {
      CHECK(cat1 + cat2 == doctest::Approx(1.0).epsilon(1e-15));
    } else {
      CHECK(cat1 + cat2 > 1.0 + 1e-15);
    }
  }
}

TEST_CASE("optimum registry") {
  CHECK(optimum_of("SphereIntCOM") == 0.0);
  CHECK(optimum_of("MVProximity") == 0.0);
  CHECK(optimum_of("EllipsoidInt") == 0.0);
  CHECK(!optimum_of("DSIntLFTL").has_value());
}

TEST_CASE("benchmarks are nonnegative everywhere") {
  std::mt19937_64 rng(401);
  for (const char* name :
       {"SphereIntCOM", "EllipsoidIntCLO", "REllipsoidIntCLO", "MVProximity"}) {
    const auto spec = default_single_spec(name, 3, 3, 3);
    const auto objective = make_single(spec);
    for (int trial = 0; trial < 100; ++trial) {
      const auto s = random_solution(objective->space(), rng);
      CHECK(objective->evaluate(s)[0] >= 0.0);
    }
  }
  const auto bi_spec = default_bi_spec("DSIntLFTL", 3, 3, 3);
  const auto objective = make_bi(bi_spec);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_solution(objective->space(), rng);
    const Eigen::VectorXd f = objective->evaluate(s);
    CHECK(f[0] >= 0.0);
    CHECK(f[1] >= 0.0);
  }
}

TEST_CASE("make_benchmark dispatches by name") {
  CHECK(make_benchmark(default_single_spec("SphereIntCOM", 2, 2, 2))->arity() ==
        1);
  CHECK(make_benchmark(default_bi_spec("DSIntLFTL", 2, 2, 2))->arity() == 2);
}
