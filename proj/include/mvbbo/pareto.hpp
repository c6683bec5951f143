#ifndef MVBBO_PARETO_HPP
#define MVBBO_PARETO_HPP

#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace mvbbo {

/// a Pareto-dominates b: a <= b componentwise and a != b. Equal vectors are
/// non-dominating.
bool dominates(const Eigen::Vector2d& a, const Eigen::Vector2d& b);

/// True iff some member of `set` dominates `point`.
bool dominated_by(const std::vector<Eigen::Vector2d>& set,
                  const Eigen::Vector2d& point);

/// Exact 2-D hypervolume: Lebesgue measure of the union of boxes
/// [f1, r1] x [f2, r2] over points strictly dominating the reference point.
double hypervolume_2d(const std::vector<Eigen::Vector2d>& points,
                      const Eigen::Vector2d& reference);

/// HV(set + {point}) - HV(set).
double hypervolume_improvement(const Eigen::Vector2d& point,
                               const std::vector<Eigen::Vector2d>& set,
                               const Eigen::Vector2d& reference);

/// Euclidean distance from a dominated point to the empirical Pareto front,
/// the staircase boundary of the region dominated by no member of `set` and
/// dominating the reference point. Requires a non-empty set.
double epf_distance(const Eigen::Vector2d& point,
                    const std::vector<Eigen::Vector2d>& set,
                    const Eigen::Vector2d& reference);

/// Uncrowded hypervolume improvement: the hypervolume improvement when the
/// empirical front does not dominate the point, minus the distance to the
/// front otherwise. Points outside the reference box count as dominated by
/// the front's boundary (they are pulled back toward the box).
double uhvi(const Eigen::Vector2d& point,
            const std::vector<Eigen::Vector2d>& set,
            const Eigen::Vector2d& reference);

/// Archive of all evaluated objective vectors with a maintained non-dominated
/// subset. Bi-objective only.
class ParetoArchive {
 public:
  explicit ParetoArchive(Eigen::Vector2d reference);

  void insert(const Eigen::Vector2d& objectives);

  const std::vector<Eigen::Vector2d>& all() const { return all_; }
  const std::vector<Eigen::Vector2d>& front() const { return front_; }
  const Eigen::Vector2d& reference() const { return reference_; }

  /// Hypervolume of the non-dominated subset with respect to the reference
  /// point; members outside the reference box contribute zero.
  double hypervolume() const;

 private:
  Eigen::Vector2d reference_;
  std::vector<Eigen::Vector2d> all_;
  std::vector<Eigen::Vector2d> front_;
};

}  // namespace mvbbo

#endif  // MVBBO_PARETO_HPP
