#include "eqsig/ml/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "eqsig/error.hpp"

namespace eqsig::ml {

GaussianNb::GaussianNb(std::vector<ClassGaussian> classes, double epsilon)
    : classes_(std::move(classes)), epsilon_(epsilon) {
  if (classes_.empty()) throw Error(ErrorCode::BadModel, "naive Bayes has no classes");
  const std::size_t d = classes_.front().mean.size();
  for (const auto& c : classes_) {
    if (c.mean.size() != d || c.variance.size() != d)
      throw Error(ErrorCode::BadModel, "naive Bayes class dimensions differ");
    for (double v : c.variance)
      if (!(v > 0.0)) throw Error(ErrorCode::BadModel, "non-positive variance");
  }
}

GaussianNb GaussianNb::fit(const Matrix& X, std::span<const Label> y) {
  check_training_data(X, y);
  const std::size_t n = X.rows(), d = X.cols();

  double max_variance = 0.0;
  for (std::size_t c = 0; c < d; ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < n; ++r) mean += X(r, c);
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t r = 0; r < n; ++r) ss += (X(r, c) - mean) * (X(r, c) - mean);
    max_variance = std::max(max_variance, ss / static_cast<double>(n));
  }
  // All-constant training data would give a zero epsilon; fall back to the
  // bare smoothing factor so every variance stays positive.
  const double epsilon = max_variance > 0.0 ? kVarianceSmoothing * max_variance : kVarianceSmoothing;

  std::vector<ClassGaussian> classes;
  for (Label label : kAllLabels) {
    std::vector<std::size_t> members;
    for (std::size_t r = 0; r < n; ++r)
      if (y[r] == label) members.push_back(r);
    if (members.empty()) continue;

    ClassGaussian g;
    g.label = label;
    g.prior = static_cast<double>(members.size()) / static_cast<double>(n);
    g.mean.assign(d, 0.0);
    g.variance.assign(d, 0.0);
    const double m = static_cast<double>(members.size());
    for (std::size_t r : members)
      for (std::size_t c = 0; c < d; ++c) g.mean[c] += X(r, c);
    for (double& v : g.mean) v /= m;
    for (std::size_t r : members)
      for (std::size_t c = 0; c < d; ++c) {
        const double dev = X(r, c) - g.mean[c];
        g.variance[c] += dev * dev;
      }
    for (double& v : g.variance) v = v / m + epsilon;
    classes.push_back(std::move(g));
  }
  return GaussianNb(std::move(classes), epsilon);
}

std::array<std::optional<double>, kNumLabels> GaussianNb::log_scores(
    std::span<const double> x) const {
  check_dimension(x);
  std::array<std::optional<double>, kNumLabels> scores{};
  for (const auto& g : classes_) {
    double s = std::log(g.prior);
    for (std::size_t c = 0; c < x.size(); ++c) {
      const double dev = x[c] - g.mean[c];
      s -= 0.5 * std::log(2.0 * std::numbers::pi * g.variance[c]) + dev * dev / (2.0 * g.variance[c]);
    }
    scores[index_of(g.label)] = s;
  }
  return scores;
}

Label argmax_with_hold_ties(const std::array<std::optional<double>, kNumLabels>& scores) {
  std::optional<double> best;
  for (const auto& s : scores)
    if (s && (!best || *s > *best)) best = s;
  if (!best) return Label::Hold;
  std::size_t winners = 0;
  Label winner = Label::Hold;
  for (std::size_t i = 0; i < kNumLabels; ++i)
    if (scores[i] && *scores[i] == *best) {
      ++winners;
      winner = static_cast<Label>(i);
    }
  return winners == 1 ? winner : Label::Hold;
}

Label GaussianNb::predict(std::span<const double> x) const {
  return argmax_with_hold_ties(log_scores(x));
}

nlohmann::json GaussianNb::parameters() const {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& g : classes_) {
    classes.push_back({{"label", index_of(g.label)},
                       {"prior", g.prior},
                       {"mean", g.mean},
                       {"variance", g.variance}});
  }
  return {{"epsilon", epsilon_}, {"classes", std::move(classes)}};
}

GaussianNb GaussianNb::from_parameters(const nlohmann::json& params) {
  try {
    std::vector<ClassGaussian> classes;
    for (const auto& c : params.at("classes")) {
      auto label = label_from_int(c.at("label").get<int>());
      if (!label) throw Error(ErrorCode::BadModel, "naive Bayes label");
      classes.push_back({*label, c.at("prior").get<double>(), c.at("mean").get<std::vector<double>>(),
                         c.at("variance").get<std::vector<double>>()});
    }
    return GaussianNb(std::move(classes), params.at("epsilon").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadModel, std::string("naive Bayes: ") + e.what());
  }
}

GaussianNb fit_gaussian_nb(const Matrix& X, std::span<const Label> y) {
  return GaussianNb::fit(X, y);
}

Label predict_gaussian_nb(const GaussianNb& model, std::span<const double> x) {
  return model.predict(x);
}

}  // namespace eqsig::ml
