#include "mvbbo/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mvbbo {

bool dominates(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a[0] <= b[0] && a[1] <= b[1] && (a[0] < b[0] || a[1] < b[1]);
}

bool dominated_by(const std::vector<Eigen::Vector2d>& set,
                  const Eigen::Vector2d& point) {
  return std::any_of(set.begin(), set.end(),
                     [&](const Eigen::Vector2d& s) { return dominates(s, point); });
}

double hypervolume_2d(const std::vector<Eigen::Vector2d>& points,
                      const Eigen::Vector2d& reference) {
  std::vector<Eigen::Vector2d> inside;
  inside.reserve(points.size());
  for (const auto& p : points) {
    if (p[0] < reference[0] && p[1] < reference[1]) inside.push_back(p);
  }
  std::sort(inside.begin(), inside.end(),
            [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
              return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
            });
  // Left-to-right sweep over horizontal slabs of the union of boxes.
  double volume = 0.0;
  double ceiling = reference[1];
  for (const auto& p : inside) {
    if (p[1] < ceiling) {
      volume += (reference[0] - p[0]) * (ceiling - p[1]);
      ceiling = p[1];
    }
  }
  return volume;
}

double hypervolume_improvement(const Eigen::Vector2d& point,
                               const std::vector<Eigen::Vector2d>& set,
                               const Eigen::Vector2d& reference) {
  std::vector<Eigen::Vector2d> extended = set;
  extended.push_back(point);
  return hypervolume_2d(extended, reference) - hypervolume_2d(set, reference);
}

namespace {

double distance_to_corner(const Eigen::Vector2d& point, double corner_x,
                          double corner_y) {
  const double dx = std::max(0.0, point[0] - corner_x);
  const double dy = std::max(0.0, point[1] - corner_y);
  return std::hypot(dx, dy);
}

/// Non-dominated members strictly inside the reference box, sorted by the
/// first objective ascending. Members outside the box do not shape the
/// non-dominated region.
std::vector<Eigen::Vector2d> effective_front(
    const std::vector<Eigen::Vector2d>& set, const Eigen::Vector2d& reference) {
  std::vector<Eigen::Vector2d> inside;
  for (const auto& p : set) {
    if (p[0] < reference[0] && p[1] < reference[1]) inside.push_back(p);
  }
  std::sort(inside.begin(), inside.end(),
            [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
              return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
            });
  std::vector<Eigen::Vector2d> front;
  for (const auto& p : inside) {
    if (front.empty() || p[1] < front.back()[1]) front.push_back(p);
  }
  return front;
}

}  // namespace

double epf_distance(const Eigen::Vector2d& point,
                    const std::vector<Eigen::Vector2d>& set,
                    const Eigen::Vector2d& reference) {
  if (set.empty()) {
    throw std::invalid_argument("epf_distance: empty set has no front");
  }
  const auto front = effective_front(set, reference);
  if (front.empty()) {
    // No member shapes the region: the boundary is the reference box corner.
    return distance_to_corner(point, reference[0], reference[1]);
  }
  // The closure of the non-dominated region is the union of lower-left boxes
  // whose corners interleave consecutive front points, capped by the
  // reference point at both ends.
  double best = distance_to_corner(point, front.front()[0], reference[1]);
  for (std::size_t i = 1; i < front.size(); ++i) {
    best = std::min(best,
                    distance_to_corner(point, front[i][0], front[i - 1][1]));
  }
  best = std::min(best,
                  distance_to_corner(point, reference[0], front.back()[1]));
  return best;
}

double uhvi(const Eigen::Vector2d& point,
            const std::vector<Eigen::Vector2d>& set,
            const Eigen::Vector2d& reference) {
  if (set.empty()) {
    return hypervolume_improvement(point, set, reference);
  }
  const bool inside = point[0] < reference[0] && point[1] < reference[1];
  if (inside && !dominated_by(set, point)) {
    return hypervolume_improvement(point, set, reference);
  }
  return -epf_distance(point, set, reference);
}

ParetoArchive::ParetoArchive(Eigen::Vector2d reference)
    : reference_(std::move(reference)) {}

void ParetoArchive::insert(const Eigen::Vector2d& objectives) {
  all_.push_back(objectives);
  for (const auto& member : front_) {
    if (dominates(member, objectives) ||
        (member[0] == objectives[0] && member[1] == objectives[1])) {
      return;
    }
  }
  std::erase_if(front_, [&](const Eigen::Vector2d& member) {
    return dominates(objectives, member);
  });
  front_.push_back(objectives);
}

double ParetoArchive::hypervolume() const {
  return hypervolume_2d(front_, reference_);
}

}  // namespace mvbbo
