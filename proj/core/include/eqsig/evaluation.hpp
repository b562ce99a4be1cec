#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "eqsig/label.hpp"
#include "eqsig/ml/model.hpp"
#include "eqsig/ml/spec.hpp"
#include "eqsig/transform.hpp"

// Confusion matrices and per-signal metrics, per label horizon.
namespace eqsig::eval {

// counts[true][predicted], label order Sell, Hold, Buy.
class ConfusionMatrix {
 public:
  ConfusionMatrix() = default;
  explicit ConfusionMatrix(const std::array<ClassCounts, kNumLabels>& counts) : counts_(counts) {}

  std::size_t at(Label truth, Label predicted) const {
    return counts_[index_of(truth)][index_of(predicted)];
  }
  void add(Label truth, Label predicted) { ++counts_[index_of(truth)][index_of(predicted)]; }

  std::size_t total() const;
  std::size_t trace() const;
  std::size_t row_total(Label truth) const;
  std::size_t column_total(Label predicted) const;
  const std::array<ClassCounts, kNumLabels>& counts() const { return counts_; }

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  std::array<ClassCounts, kNumLabels> counts_{};
};

// Throws Error{LengthMismatch | Empty}.
ConfusionMatrix confusion_matrix(std::span<const Label> y_true, std::span<const Label> y_pred);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // The class was never predicted; precision is reported as 0.
  bool no_predictions = false;
  // The class never occurs in the truth; recall is reported as 0.
  bool no_instances = false;

  friend bool operator==(const ClassMetrics&, const ClassMetrics&) = default;
};

ClassMetrics class_metrics(const ConfusionMatrix& cm, Label cls);

// trace / total, which for single-label multiclass data is both the
// micro-averaged F1 and the accuracy. Throws Error{Empty}.
double micro_f1(const ConfusionMatrix& cm);

struct HorizonReport {
  int horizon = 0;
  double buy_precision = 0.0;
  double sell_recall = 0.0;
  double hold_f1 = 0.0;
  double micro_f1 = 0.0;
  bool buy_precision_vacuous = false;  // no Buy predictions
  bool sell_recall_vacuous = false;    // no true Sells
  ConfusionMatrix confusion;
  std::size_t n_train = 0;
  std::size_t n_test = 0;

  friend bool operator==(const HorizonReport&, const HorizonReport&) = default;
};

HorizonReport make_horizon_report(int horizon, const ConfusionMatrix& cm, std::size_t n_train);

struct EvaluationReport {
  ml::ClassifierSpec spec;
  std::uint64_t seed = 0;
  std::vector<std::string> features;
  std::optional<std::string> sector;
  std::vector<HorizonReport> horizons;
  std::vector<int> skipped_horizons;  // no labelled train or test rows

  friend bool operator==(const EvaluationReport&, const EvaluationReport&) = default;
};

// One independent model per horizon, fitted on that horizon's labelled train
// rows and scored on its labelled test rows. When `models` is non-null the
// fitted models are appended to it. Throws Error{NoEvaluableHorizon}.
EvaluationReport evaluate_per_horizon(const ml::ClassifierSpec& spec,
                                      const std::vector<std::string>& features,
                                      const std::vector<int>& horizons,
                                      std::span<const transform::FeatureRow> train,
                                      std::span<const transform::FeatureRow> test,
                                      std::vector<ml::TrainedModel>* models = nullptr);

nlohmann::json to_json(const EvaluationReport& report);
EvaluationReport evaluation_report_from_json(const nlohmann::json& j);

// Flat rows: sector, model, horizon, buy_precision, sell_recall, hold_f1,
// micro_f1, n_test.
void write_metrics_csv(std::span<const EvaluationReport> reports, std::ostream& out);

}  // namespace eqsig::eval
