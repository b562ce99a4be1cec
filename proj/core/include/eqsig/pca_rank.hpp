#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "eqsig/matrix.hpp"
#include "eqsig/transform.hpp"

// PCA on standardized features and the weighted-occurrence feature ranking.
namespace eqsig::pca {

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // descending
  Matrix eigenvectors;              // column j pairs with eigenvalues[j]
  std::size_t sweeps = 0;

  std::size_t dimension() const { return eigenvalues.size(); }
};

// Sample covariance (1/(n-1)) of the columns of X. Throws Error{TooFewRows}.
Matrix covariance_matrix(const Matrix& X);

inline constexpr double kJacobiTolerance = 1e-12;
inline constexpr std::size_t kJacobiMaxSweeps = 100;

// Cyclic Jacobi rotations until the largest off-diagonal magnitude drops
// below `tol`. Eigenvectors are normalised so their first entry with
// magnitude above 1e-12 is positive.
// Throws Error{NotSymmetric | NoConvergence | DimensionMismatch}.
EigenDecomposition jacobi_eigen(const Matrix& A, double tol = kJacobiTolerance,
                                std::size_t max_sweeps = kJacobiMaxSweeps);

struct ExplainedVariance {
  std::vector<double> ratios;
  std::vector<double> cumulative;
};

// Tiny negative eigenvalues (>= -1e-9) are clamped to zero.
// Throws Error{ZeroTotalVariance | NegativeVariance}.
ExplainedVariance explained_variance(std::span<const double> eigenvalues);

struct RankConfig {
  std::size_t n_components = 6;
  double contribution_threshold = 0.1;
  std::vector<int> weights{6, 5, 4, 3, 2, 1};  // points for PC-1..PC-n
  std::size_t top_k = 6;

  // Throws Error{InvalidConfig}.
  void validate() const;
};

// contributions[f] lists the 0-based components that feature f contributes
// to, ascending.
using ContributionSets = std::vector<std::vector<std::size_t>>;

// |loading| >= threshold, loadings given as d x n_components.
ContributionSets valid_contributions(const Matrix& loadings, const RankConfig& cfg);

struct FeatureScore {
  std::string feature;
  std::size_t canonical_index = 0;
  std::size_t occurrences = 0;
  int weighted_occurrence = 0;

  friend bool operator==(const FeatureScore&, const FeatureScore&) = default;
};

// Scores in input (canonical) order.
std::vector<FeatureScore> weighted_occurrences(const ContributionSets& contributions,
                                               std::span<const std::string> names,
                                               const RankConfig& cfg);

// Sorts by weighted occurrence desc, then occurrences desc, then canonical
// index asc.
void sort_scores(std::vector<FeatureScore>& scores);

// First top_k names of the sorted scores. Features with zero score pad the
// selection in canonical order. Throws Error{KTooLarge}.
std::vector<std::string> select_top_features(std::span<const FeatureScore> scores,
                                             std::size_t top_k);

struct PcaRanking {
  std::vector<std::string> features;      // canonical order
  std::vector<std::string> pca_features;  // non-constant features fed to PCA
  std::vector<std::string> constant_features;
  std::vector<double> eigenvalues;
  ExplainedVariance variance;
  Matrix loadings;  // features.size() x components, zero rows for constants
  std::vector<FeatureScore> scores;  // sorted
  std::vector<std::string> selected;
  bool padded = false;  // selection includes zero-score features
};

// Standardizes `rows`, drops constant columns, eigendecomposes the
// covariance and scores every feature. Throws Error{TooFewRows |
// ZeroTotalVariance | KTooLarge | NoConvergence}.
PcaRanking rank_features(std::span<const transform::FeatureRow> rows,
                         std::span<const std::string> feature_names, const RankConfig& cfg);

// feature,occurrences,weighted_occurrence
void write_ranking_csv(const PcaRanking& ranking, std::ostream& out);
// component,ratio,cumulative
void write_variance_csv(const PcaRanking& ranking, std::ostream& out);
nlohmann::json to_json(const PcaRanking& ranking);

}  // namespace eqsig::pca
