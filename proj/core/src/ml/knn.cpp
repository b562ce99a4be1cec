#include "eqsig/ml/knn.hpp"

#include <algorithm>
#include <numeric>

#include <nlohmann/json.hpp>

#include "eqsig/error.hpp"

namespace eqsig::ml {

KnnClassifier::KnnClassifier(Matrix X, std::vector<Label> y, std::size_t k)
    : X_(std::move(X)), y_(std::move(y)), k_(k) {
  check_training_data(X_, y_);
  if (k_ == 0) throw Error(ErrorCode::InvalidConfig, "k must be >= 1");
  if (k_ > X_.rows()) {
    throw Error(ErrorCode::KTooLarge, "k = " + std::to_string(k_) + " but only " +
                                          std::to_string(X_.rows()) + " training rows");
  }
}

std::vector<std::size_t> KnnClassifier::neighbours(std::span<const double> x) const {
  check_dimension(x);
  std::vector<std::pair<double, std::size_t>> dist(X_.rows());
  for (std::size_t r = 0; r < X_.rows(); ++r) {
    const auto row = X_.row(r);
    double d2 = 0.0;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const double diff = row[c] - x[c];
      d2 += diff * diff;
    }
    dist[r] = {d2, r};
  }
  // Squared distances order identically to distances; pairs compare by
  // (distance, index).
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k_), dist.end());
  std::vector<std::size_t> out(k_);
  for (std::size_t i = 0; i < k_; ++i) out[i] = dist[i].second;
  return out;
}

Label KnnClassifier::predict(std::span<const double> x) const {
  ClassCounts votes{};
  for (std::size_t idx : neighbours(x)) ++votes[index_of(y_[idx])];
  return majority_label(votes);
}

nlohmann::json KnnClassifier::parameters() const {
  std::vector<int> labels;
  labels.reserve(y_.size());
  for (Label l : y_) labels.push_back(static_cast<int>(index_of(l)));
  return {{"k", k_}, {"dimension", X_.cols()}, {"rows", X_.rows()}, {"X", X_.data()},
          {"y", labels}};
}

KnnClassifier KnnClassifier::from_parameters(const nlohmann::json& params) {
  try {
    const auto rows = params.at("rows").get<std::size_t>();
    const auto cols = params.at("dimension").get<std::size_t>();
    const auto values = params.at("X").get<std::vector<double>>();
    if (values.size() != rows * cols) throw Error(ErrorCode::BadModel, "knn matrix size");
    Matrix X(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(r * cols), cols, X.row(r).begin());
    std::vector<Label> y;
    for (int v : params.at("y").get<std::vector<int>>()) {
      auto l = label_from_int(v);
      if (!l) throw Error(ErrorCode::BadModel, "knn label");
      y.push_back(*l);
    }
    return KnnClassifier(std::move(X), std::move(y), params.at("k").get<std::size_t>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadModel, std::string("knn: ") + e.what());
  }
}

Label knn_predict(const Matrix& X, std::span<const Label> y, std::span<const double> x,
                  std::size_t k) {
  return KnnClassifier(X, {y.begin(), y.end()}, k).predict(x);
}

}  // namespace eqsig::ml
