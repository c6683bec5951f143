#ifndef MVBBO_SEARCH_SPACE_HPP
#define MVBBO_SEARCH_SPACE_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace mvbbo {

/// Mixed search space: continuous, integer (ordered level lists), and
/// categorical (one-hot) variables. Continuous and integer variables share a
/// combined coordinate vector of length mixed_count(); the slot maps say which
/// coordinate belongs to which variable.
struct SearchSpace {
  std::size_t continuous_count = 0;

  /// Per integer variable, the admissible level values in strictly increasing
  /// order. Levels are arbitrary reals (non-uniform grids are allowed).
  std::vector<std::vector<double>> integer_levels;

  /// Per categorical variable, the number of categories K_n >= 2.
  std::vector<std::size_t> category_counts;

  /// Optional per-continuous-dimension [lo, hi] intervals, used only by the
  /// box-constraint handling. Size continuous_count when present.
  std::optional<std::vector<std::array<double, 2>>> continuous_bounds;

  /// Slot of the n-th continuous / integer variable in the combined vector.
  std::vector<std::size_t> continuous_slot;
  std::vector<std::size_t> integer_slot;

  /// Builds a space with the default layout: continuous variables occupy
  /// slots [0, n_continuous), integer variables the remainder.
  static SearchSpace make(std::size_t n_continuous,
                          std::vector<std::vector<double>> integer_levels,
                          std::vector<std::size_t> category_counts);

  std::size_t integer_count() const { return integer_levels.size(); }
  std::size_t categorical_count() const { return category_counts.size(); }
  std::size_t mixed_count() const { return continuous_count + integer_count(); }
  std::size_t variable_count() const { return mixed_count() + categorical_count(); }
};

/// Checks every SearchSpace invariant. Returns an empty list iff the space is
/// well formed; otherwise one message per violated invariant.
std::vector<std::string> validate_space(const SearchSpace& space);

/// Throws std::invalid_argument listing all violations if the space is invalid.
void require_valid(const SearchSpace& space);

/// One-hot vector of length `size` with a 1 at the 1-based position `index`.
Eigen::VectorXd one_hot(std::size_t index, std::size_t size);

/// A candidate solution: the evaluated triple (x, z, c) plus the pre-encoding
/// vector v and whitened vector y kept for the distribution updates.
struct MixedSolution {
  Eigen::VectorXd x;                  ///< continuous values, length n_co
  Eigen::VectorXd z;                  ///< integer level values, length n_in
  std::vector<Eigen::VectorXd> c;     ///< one-hot vectors, c[n] has length K_n
  Eigen::VectorXd pre_encoding;       ///< v, length mixed_count()
  Eigen::VectorXd whitened;           ///< y, length mixed_count()
  Eigen::VectorXd fitness;            ///< objective vector, length M

  /// 0-based index of the selected category in dimension n.
  std::size_t category_index(std::size_t n) const;
};

/// Deterministic vector-valued objective over a fixed search space.
/// Single-objective functions use arity 1.
class ObjectiveFunction {
 public:
  ObjectiveFunction(SearchSpace space, std::size_t arity);
  virtual ~ObjectiveFunction() = default;

  virtual Eigen::VectorXd evaluate(const MixedSolution& solution) const = 0;

  std::size_t arity() const { return arity_; }
  const SearchSpace& space() const { return space_; }

 private:
  SearchSpace space_;
  std::size_t arity_;
};

}  // namespace mvbbo

#endif  // MVBBO_SEARCH_SPACE_HPP
