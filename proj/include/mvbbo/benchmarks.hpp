#ifndef MVBBO_BENCHMARKS_HPP
#define MVBBO_BENCHMARKS_HPP

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mvbbo/search_space.hpp"

namespace mvbbo {

/// Geometry and scale constants of one benchmark instance.
struct BenchmarkSpec {
  std::string name;
  std::size_t n_continuous = 0;
  std::size_t n_integer = 0;
  std::size_t n_categorical = 0;
  std::size_t categories = 5;            ///< K per categorical dimension
  std::vector<double> integer_levels;    ///< shared grid for all integer dims
  double x_scale = 3.0;
  double z_scale = 3.0;
  std::optional<std::array<double, 2>> continuous_bounds;
};

/// Consecutive integer grid {lo, lo+1, ..., hi} as level values.
std::vector<double> integer_grid(int lo, int hi);

/// Single-objective defaults: Z = {-3..3}, K = 5, scales 3.
BenchmarkSpec default_single_spec(const std::string& name, std::size_t n_co,
                                  std::size_t n_in, std::size_t n_ca);

/// Bi-objective defaults: Z = {-5..15}, K = 5, scales 10, bounds [-5, 15].
BenchmarkSpec default_bi_spec(const std::string& name, std::size_t n_co,
                              std::size_t n_in, std::size_t n_ca);

/// Registered single-objective functions: SphereIntCOM, EllipsoidIntCLO,
/// REllipsoidIntCLO, MVProximity, EllipsoidInt, REllipsoidInt.
std::unique_ptr<ObjectiveFunction> make_single(const BenchmarkSpec& spec);

/// Registered bi-objective functions: DSIntLFTL.
std::unique_ptr<ObjectiveFunction> make_bi(const BenchmarkSpec& spec);

/// Dispatches on the registered name.
std::unique_ptr<ObjectiveFunction> make_benchmark(const BenchmarkSpec& spec);

/// Known optimal value (0 for every single-objective benchmark), or nullopt
/// for multi-objective ones. Throws on unknown names.
std::optional<double> optimum_of(const std::string& name);

/// Objective arity of a registered name. Throws on unknown names.
std::size_t benchmark_arity(const std::string& name);

}  // namespace mvbbo

#endif  // MVBBO_BENCHMARKS_HPP
