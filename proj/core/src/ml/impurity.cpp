#include "eqsig/ml/impurity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "eqsig/error.hpp"

namespace eqsig::ml {

namespace {

std::size_t total_of(const ClassCounts& counts) {
  const std::size_t total = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  if (total == 0) throw Error(ErrorCode::EmptyNode, "impurity of an empty node");
  return total;
}

}  // namespace

double gini_impurity(const ClassCounts& counts) {
  const double total = static_cast<double>(total_of(counts));
  double sum_sq = 0.0;
  for (std::size_t c : counts) {
    const double p = static_cast<double>(c) / total;
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

double entropy_impurity(const ClassCounts& counts) {
  const double total = static_cast<double>(total_of(counts));
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    h -= p * std::log2(p);
  }
  return h;
}

double impurity(const ClassCounts& counts, Criterion criterion) {
  return criterion == Criterion::Gini ? gini_impurity(counts) : entropy_impurity(counts);
}

ClassCounts count_labels(std::span<const Label> labels) {
  ClassCounts counts{};
  for (Label l : labels) ++counts[index_of(l)];
  return counts;
}

std::optional<Split> best_split(const Matrix& X, std::span<const Label> y,
                                std::span<const std::size_t> rows, Criterion criterion,
                                std::span<const std::size_t> candidate_features) {
  if (rows.size() < 2) return std::nullopt;

  ClassCounts parent{};
  for (std::size_t r : rows) ++parent[index_of(y[r])];
  const double parent_impurity = impurity(parent, criterion);
  if (parent_impurity <= 0.0) return std::nullopt;

  const double n = static_cast<double>(rows.size());
  std::vector<std::pair<double, Label>> column(rows.size());
  std::vector<Split> candidates;

  for (std::size_t feature : candidate_features) {
    for (std::size_t i = 0; i < rows.size(); ++i) column[i] = {X(rows[i], feature), y[rows[i]]};
    std::sort(column.begin(), column.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    ClassCounts left{};
    ClassCounts right = parent;
    for (std::size_t i = 0; i + 1 < column.size(); ++i) {
      const std::size_t label = index_of(column[i].second);
      ++left[label];
      --right[label];
      const double lo = column[i].first;
      const double hi = column[i + 1].first;
      if (!(lo < hi)) continue;

      const double n_left = static_cast<double>(i + 1);
      const double weighted = (n_left / n) * impurity(left, criterion) +
                              ((n - n_left) / n) * impurity(right, criterion);
      const double decrease = parent_impurity - weighted;
      if (decrease <= kSplitTolerance) continue;

      double threshold = (lo + hi) / 2.0;
      if (!(threshold < hi)) threshold = lo;
      candidates.push_back({feature, threshold, decrease});
    }
  }
  if (candidates.empty()) return std::nullopt;

  double top = 0.0;
  for (const Split& s : candidates) top = std::max(top, s.impurity_decrease);
  const Split* chosen = nullptr;
  for (const Split& s : candidates) {
    if (s.impurity_decrease < top - kSplitTolerance) continue;
    if (!chosen || s.feature < chosen->feature ||
        (s.feature == chosen->feature && s.threshold < chosen->threshold)) {
      chosen = &s;
    }
  }
  return *chosen;
}

std::optional<Split> best_split(const Matrix& X, std::span<const Label> y, Criterion criterion,
                                std::span<const std::size_t> candidate_features) {
  std::vector<std::size_t> rows(X.rows());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return best_split(X, y, rows, criterion, candidate_features);
}

}  // namespace eqsig::ml
