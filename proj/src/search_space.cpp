#include "mvbbo/search_space.hpp"

#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mvbbo {

SearchSpace SearchSpace::make(std::size_t n_continuous,
                              std::vector<std::vector<double>> integer_levels,
                              std::vector<std::size_t> category_counts) {
  SearchSpace space;
  space.continuous_count = n_continuous;
  space.integer_levels = std::move(integer_levels);
  space.category_counts = std::move(category_counts);
  space.continuous_slot.resize(n_continuous);
  std::iota(space.continuous_slot.begin(), space.continuous_slot.end(), 0u);
  space.integer_slot.resize(space.integer_levels.size());
  std::iota(space.integer_slot.begin(), space.integer_slot.end(), n_continuous);
  return space;
}

std::vector<std::string> validate_space(const SearchSpace& space) {
  std::vector<std::string> violations;
  for (std::size_t n = 0; n < space.integer_levels.size(); ++n) {
    const auto& levels = space.integer_levels[n];
    if (levels.size() < 2) {
      violations.push_back("integer domain " + std::to_string(n) +
                           " has fewer than 2 levels");
    }
    for (std::size_t l = 1; l < levels.size(); ++l) {
      if (!(levels[l - 1] < levels[l])) {
        violations.push_back("integer domain " + std::to_string(n) +
                             " not strictly increasing");
        break;
      }
    }
  }
  for (std::size_t n = 0; n < space.category_counts.size(); ++n) {
    if (space.category_counts[n] < 2) {
      violations.push_back("category count " + std::to_string(n) + " < 2");
    }
  }
  // The slot maps must form a bijection onto {0, ..., mixed_count() - 1}.
  if (space.continuous_slot.size() != space.continuous_count ||
      space.integer_slot.size() != space.integer_count()) {
    violations.push_back("slot map sizes do not match variable counts");
  } else {
    std::set<std::size_t> seen;
    bool overlap = false;
    bool out_of_range = false;
    auto visit = [&](std::size_t slot) {
      if (slot >= space.mixed_count()) out_of_range = true;
      if (!seen.insert(slot).second) overlap = true;
    };
    for (std::size_t slot : space.continuous_slot) visit(slot);
    for (std::size_t slot : space.integer_slot) visit(slot);
    if (overlap) violations.push_back("slot maps overlap");
    if (out_of_range) violations.push_back("slot index out of range");
    if (!overlap && !out_of_range && seen.size() != space.mixed_count()) {
      violations.push_back("slot maps do not cover the mixed vector");
    }
  }
  if (space.continuous_bounds) {
    if (space.continuous_bounds->size() != space.continuous_count) {
      violations.push_back("continuous bounds size mismatch");
    } else {
      for (std::size_t n = 0; n < space.continuous_bounds->size(); ++n) {
        const auto& b = (*space.continuous_bounds)[n];
        if (!(b[0] < b[1])) {
          violations.push_back("continuous bound " + std::to_string(n) +
                               " has lo >= hi");
        }
      }
    }
  }
  return violations;
}

void require_valid(const SearchSpace& space) {
  const auto violations = validate_space(space);
  if (violations.empty()) return;
  std::ostringstream message;
  message << "invalid search space:";
  for (const auto& v : violations) message << " [" << v << "]";
  throw std::invalid_argument(message.str());
}

Eigen::VectorXd one_hot(std::size_t index, std::size_t size) {
  if (index < 1 || index > size) {
    throw std::out_of_range("one_hot: index " + std::to_string(index) +
                            " outside [1, " + std::to_string(size) + "]");
  }
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size));
  v[static_cast<Eigen::Index>(index - 1)] = 1.0;
  return v;
}

std::size_t MixedSolution::category_index(std::size_t n) const {
  Eigen::Index best = 0;
  c[n].maxCoeff(&best);
  return static_cast<std::size_t>(best);
}

ObjectiveFunction::ObjectiveFunction(SearchSpace space, std::size_t arity)
    : space_(std::move(space)), arity_(arity) {
  require_valid(space_);
  if (arity_ < 1) throw std::invalid_argument("objective arity must be >= 1");
}

}  // namespace mvbbo
