#include "mvbbo/benchmarks.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace mvbbo {

namespace {

SearchSpace space_from(const BenchmarkSpec& spec) {
  std::vector<std::vector<double>> domains(spec.n_integer, spec.integer_levels);
  std::vector<std::size_t> counts(spec.n_categorical, spec.categories);
  SearchSpace space =
      SearchSpace::make(spec.n_continuous, std::move(domains), std::move(counts));
  if (spec.continuous_bounds) {
    space.continuous_bounds = std::vector<std::array<double, 2>>(
        spec.n_continuous, *spec.continuous_bounds);
  }
  return space;
}

class LambdaObjective final : public ObjectiveFunction {
 public:
  using Body = std::function<Eigen::VectorXd(const MixedSolution&)>;
  LambdaObjective(SearchSpace space, std::size_t arity, Body body)
      : ObjectiveFunction(std::move(space), arity), body_(std::move(body)) {}
  Eigen::VectorXd evaluate(const MixedSolution& s) const override {
    return body_(s);
  }

 private:
  Body body_;
};

double first_category_count(const MixedSolution& s) {
  double total = 0.0;
  for (const auto& block : s.c) total += block[0];
  return total;
}

// N_ca - sum_n prod_{n' <= n} c_{n',1}: categories fixed to the first value
// count only while the prefix stays unbroken.
double leading_ones_loss(const MixedSolution& s) {
  double run = 1.0;
  double credit = 0.0;
  for (const auto& block : s.c) {
    run *= block[0];
    credit += run;
  }
  return static_cast<double>(s.c.size()) - credit;
}

// N_ca - sum_n prod_{n' >= n} c_{n',K}: suffix runs of the last category.
double trailing_lasts_loss(const MixedSolution& s) {
  double run = 1.0;
  double credit = 0.0;
  for (auto it = s.c.rbegin(); it != s.c.rend(); ++it) {
    run *= (*it)[it->size() - 1];
    credit += run;
  }
  return static_cast<double>(s.c.size()) - credit;
}

double ellipsoid_exponent(std::size_t index, std::size_t n_co, std::size_t n_in) {
  const std::size_t denom = n_co + n_in > 1 ? n_co + n_in - 1 : 1;
  return std::pow(10.0, 6.0 * static_cast<double>(index) /
                            static_cast<double>(denom));
}

double proximity_target(const MixedSolution& s, std::size_t n) {
  const auto& block = s.c[n];
  double value = 0.0;
  for (Eigen::Index k = 0; k < block.size(); ++k) {
    value += static_cast<double>(k) * block[k];
  }
  return value / static_cast<double>(block.size());
}

}  // namespace

std::vector<double> integer_grid(int lo, int hi) {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int v = lo; v <= hi; ++v) grid.push_back(static_cast<double>(v));
  return grid;
}

BenchmarkSpec default_single_spec(const std::string& name, std::size_t n_co,
                                  std::size_t n_in, std::size_t n_ca) {
  BenchmarkSpec spec;
  spec.name = name;
  spec.n_continuous = n_co;
  spec.n_integer = n_in;
  spec.n_categorical = n_ca;
  spec.categories = 5;
  spec.integer_levels = integer_grid(-3, 3);
  spec.x_scale = 3.0;
  spec.z_scale = 3.0;
  return spec;
}

BenchmarkSpec default_bi_spec(const std::string& name, std::size_t n_co,
                              std::size_t n_in, std::size_t n_ca) {
  BenchmarkSpec spec;
  spec.name = name;
  spec.n_continuous = n_co;
  spec.n_integer = n_in;
  spec.n_categorical = n_ca;
  spec.categories = 5;
  spec.integer_levels = integer_grid(-5, 15);
  spec.x_scale = 10.0;
  spec.z_scale = 10.0;
  spec.continuous_bounds = std::array<double, 2>{-5.0, 15.0};
  return spec;
}

std::unique_ptr<ObjectiveFunction> make_single(const BenchmarkSpec& spec) {
  SearchSpace space = space_from(spec);
  const std::size_t n_co = spec.n_continuous;
  const std::size_t n_in = spec.n_integer;

  if (spec.name == "SphereIntCOM") {
    return std::make_unique<LambdaObjective>(
        std::move(space), 1, [](const MixedSolution& s) {
          const double value = s.x.squaredNorm() + s.z.squaredNorm() +
                               static_cast<double>(s.c.size()) -
                               first_category_count(s);
          return Eigen::VectorXd::Constant(1, value);
        });
  }
  if (spec.name == "EllipsoidIntCLO" || spec.name == "EllipsoidInt" ||
      spec.name == "REllipsoidIntCLO" || spec.name == "REllipsoidInt") {
    const bool reversed = spec.name[0] == 'R';
    const bool categorical = spec.name.ends_with("CLO");
    if (!categorical && spec.n_categorical != 0) {
      throw std::invalid_argument(spec.name + " has no categorical part");
    }
    return std::make_unique<LambdaObjective>(
        std::move(space), 1, [=](const MixedSolution& s) {
          double value = 0.0;
          for (std::size_t n = 0; n < n_co; ++n) {
            const std::size_t index = reversed ? n_in + n : n;
            value += ellipsoid_exponent(index, n_co, n_in) *
                     s.x[static_cast<Eigen::Index>(n)] *
                     s.x[static_cast<Eigen::Index>(n)];
          }
          for (std::size_t n = 0; n < n_in; ++n) {
            const std::size_t index = reversed ? n : n_co + n;
            value += ellipsoid_exponent(index, n_co, n_in) *
                     s.z[static_cast<Eigen::Index>(n)] *
                     s.z[static_cast<Eigen::Index>(n)];
          }
          if (categorical) value += leading_ones_loss(s);
          return Eigen::VectorXd::Constant(1, value);
        });
  }
  if (spec.name == "MVProximity") {
    if (!(n_co == spec.n_categorical && n_in == spec.n_categorical)) {
      throw std::invalid_argument(
          "MVProximity requires n_co == n_in == n_ca");
    }
    const double x_scale = spec.x_scale;
    const double z_scale = spec.z_scale;
    return std::make_unique<LambdaObjective>(
        std::move(space), 1, [=](const MixedSolution& s) {
          double value = 0.0;
          for (std::size_t n = 0; n < s.c.size(); ++n) {
            const double target = proximity_target(s, n);
            const auto idx = static_cast<Eigen::Index>(n);
            const double dx = s.x[idx] / x_scale - target;
            const double dz = s.z[idx] / z_scale - target;
            value += dx * dx + dz * dz + target;
          }
          return Eigen::VectorXd::Constant(1, value);
        });
  }
  throw std::invalid_argument("unknown single-objective benchmark: " +
                              spec.name);
}

std::unique_ptr<ObjectiveFunction> make_bi(const BenchmarkSpec& spec) {
  if (spec.name != "DSIntLFTL") {
    throw std::invalid_argument("unknown bi-objective benchmark: " + spec.name);
  }
  SearchSpace space = space_from(spec);
  const double n_co = static_cast<double>(spec.n_continuous);
  const double n_in = static_cast<double>(spec.n_integer);
  const double n_ca = static_cast<double>(spec.n_categorical);
  const double x_scale = spec.x_scale;
  const double z_scale = spec.z_scale;
  return std::make_unique<LambdaObjective>(
      std::move(space), 2, [=](const MixedSolution& s) {
        Eigen::VectorXd f(2);
        double f1 = 0.0;
        double f2 = 0.0;
        for (Eigen::Index n = 0; n < s.x.size(); ++n) {
          const double scaled = s.x[n] / x_scale;
          f1 += scaled * scaled / n_co;
          f2 += (scaled - 1.0) * (scaled - 1.0) / n_co;
        }
        for (Eigen::Index n = 0; n < s.z.size(); ++n) {
          const double scaled = s.z[n] / z_scale;
          f1 += scaled * scaled / n_in;
          f2 += (scaled - 1.0) * (scaled - 1.0) / n_in;
        }
        f[0] = f1 + leading_ones_loss(s) / n_ca;
        f[1] = f2 + trailing_lasts_loss(s) / n_ca;
        return f;
      });
}

std::unique_ptr<ObjectiveFunction> make_benchmark(const BenchmarkSpec& spec) {
  if (benchmark_arity(spec.name) == 2) return make_bi(spec);
  return make_single(spec);
}

std::optional<double> optimum_of(const std::string& name) {
  if (benchmark_arity(name) == 2) return std::nullopt;
  return 0.0;
}

std::size_t benchmark_arity(const std::string& name) {
  if (name == "SphereIntCOM" || name == "EllipsoidIntCLO" ||
      name == "REllipsoidIntCLO" || name == "MVProximity" ||
      name == "EllipsoidInt" || name == "REllipsoidInt") {
    return 1;
  }
  if (name == "DSIntLFTL") return 2;
  throw std::invalid_argument("unknown benchmark: " + name);
}

}  // namespace mvbbo
