#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "eqsig/label.hpp"
#include "eqsig/matrix.hpp"
#include "eqsig/ml/spec.hpp"

namespace eqsig::ml {

// 1 - sum p^2. Throws Error{EmptyNode} when every count is zero.
double gini_impurity(const ClassCounts& counts);
// -sum p log2 p, with 0 log 0 = 0. Throws Error{EmptyNode}.
double entropy_impurity(const ClassCounts& counts);
double impurity(const ClassCounts& counts, Criterion criterion);

ClassCounts count_labels(std::span<const Label> labels);

struct Split {
  std::size_t feature = 0;
  double threshold = 0.0;
  double impurity_decrease = 0.0;
};

// A split must improve impurity by more than this to count, and decreases
// within this distance of the best are treated as ties.
inline constexpr double kSplitTolerance = 1e-12;

// Exhaustive CART search over `rows` of X. Thresholds sit at midpoints of
// consecutive distinct values and route x <= threshold left. Among splits
// whose decrease is within kSplitTolerance of the maximum, the lowest
// (feature, threshold) wins. Returns nullopt when no split has positive
// decrease.
std::optional<Split> best_split(const Matrix& X, std::span<const Label> y,
                                std::span<const std::size_t> rows, Criterion criterion,
                                std::span<const std::size_t> candidate_features);

// Convenience overload over every row.
std::optional<Split> best_split(const Matrix& X, std::span<const Label> y, Criterion criterion,
                                std::span<const std::size_t> candidate_features);

}  // namespace eqsig::ml
