#include "eqsig/pca_rank.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <nlohmann/json.hpp>

#include "eqsig/csv.hpp"
#include "eqsig/error.hpp"

namespace eqsig::pca {

Matrix covariance_matrix(const Matrix& X) {
  const std::size_t n = X.rows(), d = X.cols();
  if (n < 2) throw Error(ErrorCode::TooFewRows, "covariance needs at least 2 rows");
  std::vector<double> mean(d, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < d; ++c) mean[c] += X(r, c);
  for (double& m : mean) m /= static_cast<double>(n);

  Matrix cov(d, d);
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = X.row(r);
    for (std::size_t i = 0; i < d; ++i) {
      const double di = row[i] - mean[i];
      for (std::size_t j = i; j < d; ++j) cov(i, j) += di * (row[j] - mean[j]);
    }
  }
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      cov(i, j) /= denom;
      cov(j, i) = cov(i, j);
    }
  return cov;
}

namespace {

double max_off_diagonal(const Matrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

// Zeroes a(p, q) with one plane rotation, accumulating it into v.
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = std::isinf(theta * theta)
                       ? 0.5 / theta
                       : std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = a(p, k) = c * akp - s * akq;
    a(k, q) = a(q, k) = s * akp + c * akq;
  }
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = a(q, p) = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace

EigenDecomposition jacobi_eigen(const Matrix& A, double tol, std::size_t max_sweeps) {
  const std::size_t n = A.rows();
  if (A.cols() != n) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "empty matrix");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(std::abs(A(i, j) - A(j, i)) <= 1e-12)) {
        throw Error(ErrorCode::NotSymmetric, "A(" + std::to_string(i) + "," + std::to_string(j) +
                                                 ") differs from its transpose");
      }

  Matrix a = A;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (A(i, j) + A(j, i));
  Matrix v = Matrix::identity(n);

  std::size_t sweeps = 0;
  while (max_off_diagonal(a) >= tol) {
    if (sweeps == max_sweeps) {
      throw Error(ErrorCode::NoConvergence,
                  "off-diagonal still " + csv::format_double(max_off_diagonal(a)) + " after " +
                      std::to_string(max_sweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (a(p, q) != 0.0) rotate(a, v, p, q);
    ++sweeps;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  EigenDecomposition out;
  out.sweeps = sweeps;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.eigenvalues[j] = a(src, src);
    double sign = 1.0;
    for (std::size_t k = 0; k < n; ++k)
      if (std::abs(v(k, src)) > 1e-12) {
        sign = v(k, src) < 0.0 ? -1.0 : 1.0;
        break;
      }
    for (std::size_t k = 0; k < n; ++k) out.eigenvectors(k, j) = sign * v(k, src);
  }
  return out;
}

ExplainedVariance explained_variance(std::span<const double> eigenvalues) {
  std::vector<double> clamped;
  clamped.reserve(eigenvalues.size());
  for (double l : eigenvalues) {
    if (l < -1e-9) throw Error(ErrorCode::NegativeVariance, csv::format_double(l));
    clamped.push_back(std::max(l, 0.0));
  }
  const double total = std::accumulate(clamped.begin(), clamped.end(), 0.0);
  if (!(total > 0.0)) throw Error(ErrorCode::ZeroTotalVariance, "eigenvalues sum to zero");
  ExplainedVariance ev;
  double running = 0.0;
  for (double l : clamped) {
    ev.ratios.push_back(l / total);
    running += l / total;
    ev.cumulative.push_back(running);
  }
  return ev;
}

void RankConfig::validate() const {
  if (n_components == 0) throw Error(ErrorCode::InvalidConfig, "n_components must be >= 1");
  if (weights.size() != n_components)
    throw Error(ErrorCode::InvalidConfig, "need one weight per component");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0) throw Error(ErrorCode::InvalidConfig, "weights must be positive");
    if (i && weights[i] >= weights[i - 1])
      throw Error(ErrorCode::InvalidConfig, "weights must be strictly decreasing");
  }
  if (!(contribution_threshold > 0.0 && contribution_threshold <= 1.0))
    throw Error(ErrorCode::InvalidConfig, "contribution threshold must be in (0, 1]");
  if (top_k == 0) throw Error(ErrorCode::InvalidConfig, "top_k must be >= 1");
}

ContributionSets valid_contributions(const Matrix& loadings, const RankConfig& cfg) {
  ContributionSets sets(loadings.rows());
  const std::size_t components = std::min(loadings.cols(), cfg.n_components);
  for (std::size_t f = 0; f < loadings.rows(); ++f)
    for (std::size_t j = 0; j < components; ++j)
      if (std::abs(loadings(f, j)) >= cfg.contribution_threshold) sets[f].push_back(j);
  return sets;
}

std::vector<FeatureScore> weighted_occurrences(const ContributionSets& contributions,
                                               std::span<const std::string> names,
                                               const RankConfig& cfg) {
  if (names.size() != contributions.size())
    throw Error(ErrorCode::DimensionMismatch, "one name per contribution set required");
  std::vector<FeatureScore> scores;
  scores.reserve(names.size());
  for (std::size_t f = 0; f < names.size(); ++f) {
    FeatureScore s{names[f], f, 0, 0};
    for (std::size_t j : contributions[f]) {
      if (j >= cfg.weights.size())
        throw Error(ErrorCode::InvalidConfig, "component beyond configured weights");
      ++s.occurrences;
      s.weighted_occurrence += cfg.weights[j];
    }
    scores.push_back(std::move(s));
  }
  return scores;
}

void sort_scores(std::vector<FeatureScore>& scores) {
  std::sort(scores.begin(), scores.end(), [](const FeatureScore& a, const FeatureScore& b) {
    if (a.weighted_occurrence != b.weighted_occurrence)
      return a.weighted_occurrence > b.weighted_occurrence;
    if (a.occurrences != b.occurrences) return a.occurrences > b.occurrences;
    return a.canonical_index < b.canonical_index;
  });
}

std::vector<std::string> select_top_features(std::span<const FeatureScore> scores,
                                             std::size_t top_k) {
  if (top_k > scores.size()) {
    throw Error(ErrorCode::KTooLarge, "top_k " + std::to_string(top_k) + " exceeds " +
                                          std::to_string(scores.size()) + " features");
  }
  std::vector<FeatureScore> sorted(scores.begin(), scores.end());
  sort_scores(sorted);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < top_k; ++i) out.push_back(sorted[i].feature);
  return out;
}

PcaRanking rank_features(std::span<const transform::FeatureRow> rows,
                         std::span<const std::string> feature_names, const RankConfig& cfg) {
  cfg.validate();
  const Matrix X = transform::feature_matrix(rows);
  if (X.rows() < 2) throw Error(ErrorCode::TooFewRows, "PCA needs at least 2 rows");
  if (X.cols() != feature_names.size())
    throw Error(ErrorCode::DimensionMismatch, "feature names do not match row width");
  if (cfg.top_k > feature_names.size())
    throw Error(ErrorCode::KTooLarge, "top_k exceeds feature count");

  const auto scaler = transform::Scaler::fit(X);
  const Matrix Z = scaler.apply(X);

  PcaRanking out;
  out.features.assign(feature_names.begin(), feature_names.end());
  std::vector<std::size_t> kept;
  for (std::size_t f = 0; f < feature_names.size(); ++f) {
    if (scaler.stddev()[f] > 0.0) {
      kept.push_back(f);
      out.pca_features.push_back(feature_names[f]);
    } else {
      out.constant_features.push_back(feature_names[f]);
    }
  }
  if (kept.empty()) throw Error(ErrorCode::ZeroTotalVariance, "every feature is constant");

  Matrix Zk(Z.rows(), kept.size());
  for (std::size_t r = 0; r < Z.rows(); ++r)
    for (std::size_t k = 0; k < kept.size(); ++k) Zk(r, k) = Z(r, kept[k]);

  const auto eig = jacobi_eigen(covariance_matrix(Zk));
  out.eigenvalues = eig.eigenvalues;
  out.variance = explained_variance(eig.eigenvalues);

  const std::size_t components = std::min(cfg.n_components, kept.size());
  out.loadings = Matrix(feature_names.size(), components);
  for (std::size_t k = 0; k < kept.size(); ++k)
    for (std::size_t j = 0; j < components; ++j) out.loadings(kept[k], j) = eig.eigenvectors(k, j);

  // Constant features keep zero loadings and so an empty contribution set.
  auto contributions = valid_contributions(out.loadings, cfg);
  out.scores = weighted_occurrences(contributions, feature_names, cfg);
  sort_scores(out.scores);
  out.selected = select_top_features(out.scores, cfg.top_k);
  for (std::size_t i = 0; i < cfg.top_k; ++i)
    if (out.scores[i].weighted_occurrence == 0) out.padded = true;
  return out;
}

void write_ranking_csv(const PcaRanking& ranking, std::ostream& out) {
  out << "feature,occurrences,weighted_occurrence\n";
  for (const auto& s : ranking.scores)
    out << csv::join_line({s.feature, std::to_string(s.occurrences),
                           std::to_string(s.weighted_occurrence)})
        << '\n';
}

void write_variance_csv(const PcaRanking& ranking, std::ostream& out) {
  out << "component,ratio,cumulative\n";
  for (std::size_t i = 0; i < ranking.variance.ratios.size(); ++i)
    out << "PC-" << (i + 1) << ',' << csv::format_double(ranking.variance.ratios[i]) << ','
        << csv::format_double(ranking.variance.cumulative[i]) << '\n';
}

nlohmann::json to_json(const PcaRanking& ranking) {
  nlohmann::json scores = nlohmann::json::array();
  for (const auto& s : ranking.scores)
    scores.push_back({{"feature", s.feature},
                      {"occurrences", s.occurrences},
                      {"weighted_occurrence", s.weighted_occurrence}});
  nlohmann::json loadings = nlohmann::json::object();
  for (std::size_t f = 0; f < ranking.features.size(); ++f) {
    auto row = ranking.loadings.row(f);
    loadings[ranking.features[f]] = std::vector<double>(row.begin(), row.end());
  }
  return {{"eigenvalues", ranking.eigenvalues},
          {"explained_variance_ratio", ranking.variance.ratios},
          {"cumulative_variance_ratio", ranking.variance.cumulative},
          {"constant_features", ranking.constant_features},
          {"loadings", std::move(loadings)},
          {"scores", std::move(scores)},
          {"selected", ranking.selected},
          {"padded", ranking.padded}};
}

}  // namespace eqsig::pca
