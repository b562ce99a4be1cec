#include "eqsig/evaluation.hpp"

#include <algorithm>
#include <ostream>

#include <nlohmann/json.hpp>

#include "eqsig/csv.hpp"
#include "eqsig/error.hpp"

namespace eqsig::eval {

std::size_t ConfusionMatrix::total() const {
  std::size_t t = 0;
  for (const auto& row : counts_)
    for (std::size_t c : row) t += c;
  return t;
}

std::size_t ConfusionMatrix::trace() const {
  std::size_t t = 0;
  for (std::size_t i = 0; i < kNumLabels; ++i) t += counts_[i][i];
  return t;
}

std::size_t ConfusionMatrix::row_total(Label truth) const {
  std::size_t t = 0;
  for (std::size_t c : counts_[index_of(truth)]) t += c;
  return t;
}

std::size_t ConfusionMatrix::column_total(Label predicted) const {
  std::size_t t = 0;
  for (const auto& row : counts_) t += row[index_of(predicted)];
  return t;
}

ConfusionMatrix confusion_matrix(std::span<const Label> y_true, std::span<const Label> y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(y_true.size()) + " truths vs " +
                                               std::to_string(y_pred.size()) + " predictions");
  }
  if (y_true.empty()) throw Error(ErrorCode::Empty, "no labels to compare");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < y_true.size(); ++i) cm.add(y_true[i], y_pred[i]);
  return cm;
}

ClassMetrics class_metrics(const ConfusionMatrix& cm, Label cls) {
  ClassMetrics m;
  const std::size_t tp = cm.at(cls, cls);
  const std::size_t predicted = cm.column_total(cls);
  const std::size_t actual = cm.row_total(cls);
  m.no_predictions = predicted == 0;
  m.no_instances = actual == 0;
  if (predicted) m.precision = static_cast<double>(tp) / static_cast<double>(predicted);
  if (actual) m.recall = static_cast<double>(tp) / static_cast<double>(actual);
  // 2PR/(P+R) == 2tp/(predicted+actual), computed from integers.
  if (tp) m.f1 = 2.0 * static_cast<double>(tp) / static_cast<double>(predicted + actual);
  return m;
}

double micro_f1(const ConfusionMatrix& cm) {
  const std::size_t total = cm.total();
  if (total == 0) throw Error(ErrorCode::Empty, "empty confusion matrix");
  return static_cast<double>(cm.trace()) / static_cast<double>(total);
}

HorizonReport make_horizon_report(int horizon, const ConfusionMatrix& cm, std::size_t n_train) {
  HorizonReport r;
  r.horizon = horizon;
  const auto buy = class_metrics(cm, Label::Buy);
  const auto sell = class_metrics(cm, Label::Sell);
  const auto hold = class_metrics(cm, Label::Hold);
  r.buy_precision = buy.precision;
  r.buy_precision_vacuous = buy.no_predictions;
  r.sell_recall = sell.recall;
  r.sell_recall_vacuous = sell.no_instances;
  r.hold_f1 = hold.f1;
  r.micro_f1 = micro_f1(cm);
  r.confusion = cm;
  r.n_train = n_train;
  r.n_test = cm.total();
  return r;
}

EvaluationReport evaluate_per_horizon(const ml::ClassifierSpec& spec,
                                      const std::vector<std::string>& features,
                                      const std::vector<int>& horizons,
                                      std::span<const transform::FeatureRow> train,
                                      std::span<const transform::FeatureRow> test,
                                      std::vector<ml::TrainedModel>* models) {
  EvaluationReport report;
  report.spec = spec;
  report.seed = spec.seed;
  report.features = features;

  for (std::size_t slot = 0; slot < horizons.size(); ++slot) {
    const int horizon = horizons[slot];
    auto labelled = [slot](const transform::FeatureRow& r) {
      return slot < r.labels.size() && r.labels[slot].has_value();
    };
    const auto n_train = static_cast<std::size_t>(std::count_if(train.begin(), train.end(), labelled));
    const auto n_test = static_cast<std::size_t>(std::count_if(test.begin(), test.end(), labelled));
    // The scaler needs two rows to estimate a spread.
    if (n_train < 2 || n_test == 0) {
      report.skipped_horizons.push_back(horizon);
      continue;
    }

    auto model = ml::train_model(spec, train, slot, horizon, features);
    std::vector<Label> truth, predicted;
    truth.reserve(n_test);
    predicted.reserve(n_test);
    for (const auto& row : test) {
      if (!labelled(row)) continue;
      truth.push_back(*row.labels[slot]);
      predicted.push_back(model.predict(row.features));
    }
    report.horizons.push_back(make_horizon_report(horizon, confusion_matrix(truth, predicted), n_train));
    if (models) models->push_back(std::move(model));
  }
  if (report.horizons.empty()) {
    throw Error(ErrorCode::NoEvaluableHorizon, "no horizon has labelled train and test rows");
  }
  return report;
}

nlohmann::json to_json(const EvaluationReport& report) {
  nlohmann::json horizons = nlohmann::json::array();
  for (const auto& h : report.horizons) {
    horizons.push_back({{"horizon", h.horizon},
                        {"buy_precision", h.buy_precision},
                        {"buy_precision_vacuous", h.buy_precision_vacuous},
                        {"sell_recall", h.sell_recall},
                        {"sell_recall_vacuous", h.sell_recall_vacuous},
                        {"hold_f1", h.hold_f1},
                        {"micro_f1", h.micro_f1},
                        {"confusion", h.confusion.counts()},
                        {"n_train", h.n_train},
                        {"n_test", h.n_test}});
  }
  return {{"model", ml::to_json(report.spec)},
          {"seed", report.seed},
          {"features", report.features},
          {"sector", report.sector ? nlohmann::json(*report.sector) : nlohmann::json(nullptr)},
          {"horizons", std::move(horizons)},
          {"skipped_horizons", report.skipped_horizons}};
}

EvaluationReport evaluation_report_from_json(const nlohmann::json& j) {
  try {
    EvaluationReport r;
    r.spec = ml::spec_from_json(j.at("model"));
    r.seed = j.at("seed").get<std::uint64_t>();
    r.features = j.at("features").get<std::vector<std::string>>();
    if (!j.at("sector").is_null()) r.sector = j.at("sector").get<std::string>();
    r.skipped_horizons = j.at("skipped_horizons").get<std::vector<int>>();
    for (const auto& h : j.at("horizons")) {
      HorizonReport hr;
      hr.horizon = h.at("horizon").get<int>();
      hr.buy_precision = h.at("buy_precision").get<double>();
      hr.buy_precision_vacuous = h.at("buy_precision_vacuous").get<bool>();
      hr.sell_recall = h.at("sell_recall").get<double>();
      hr.sell_recall_vacuous = h.at("sell_recall_vacuous").get<bool>();
      hr.hold_f1 = h.at("hold_f1").get<double>();
      hr.micro_f1 = h.at("micro_f1").get<double>();
      hr.confusion = ConfusionMatrix(h.at("confusion").get<std::array<ClassCounts, kNumLabels>>());
      hr.n_train = h.at("n_train").get<std::size_t>();
      hr.n_test = h.at("n_test").get<std::size_t>();
      r.horizons.push_back(hr);
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("evaluation report: ") + e.what());
  }
}

void write_metrics_csv(std::span<const EvaluationReport> reports, std::ostream& out) {
  out << "sector,model,horizon,buy_precision,sell_recall,hold_f1,micro_f1,n_test\n";
  for (const auto& report : reports) {
    for (const auto& h : report.horizons) {
      out << csv::join_line({report.sector.value_or(""), std::string(ml::to_string(report.spec.kind)),
                             std::to_string(h.horizon), csv::format_double(h.buy_precision),
                             csv::format_double(h.sell_recall), csv::format_double(h.hold_f1),
                             csv::format_double(h.micro_f1), std::to_string(h.n_test)})
          << '\n';
    }
  }
}

}  // namespace eqsig::eval
