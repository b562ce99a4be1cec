#include "eqsig/ml/spec.hpp"

#include <nlohmann/json.hpp>

#include "eqsig/error.hpp"

namespace eqsig::ml {

std::string_view to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::DecisionTree: return "decision-tree";
    case ClassifierKind::RandomForest: return "random-forest";
    case ClassifierKind::Knn: return "knn";
    case ClassifierKind::GaussianNb: return "gaussian-nb";
  }
  return "?";
}

std::string_view to_string(Criterion criterion) {
  return criterion == Criterion::Gini ? "gini" : "entropy";
}

std::optional<ClassifierKind> classifier_kind_from_string(std::string_view name) {
  if (name == "decision-tree" || name == "decision_tree" || name == "tree")
    return ClassifierKind::DecisionTree;
  if (name == "random-forest" || name == "random_forest" || name == "forest")
    return ClassifierKind::RandomForest;
  if (name == "knn") return ClassifierKind::Knn;
  if (name == "gaussian-nb" || name == "gaussian_nb" || name == "nb")
    return ClassifierKind::GaussianNb;
  return std::nullopt;
}

std::optional<Criterion> criterion_from_string(std::string_view name) {
  if (name == "gini") return Criterion::Gini;
  if (name == "entropy") return Criterion::Entropy;
  return std::nullopt;
}

void ClassifierSpec::validate() const {
  if (n_trees == 0) throw Error(ErrorCode::InvalidConfig, "n_trees must be >= 1");
  if (k == 0) throw Error(ErrorCode::InvalidConfig, "k must be >= 1");
  if (min_samples_split == 0) throw Error(ErrorCode::InvalidConfig, "min_samples_split must be >= 1");
  if (mtry && *mtry == 0) throw Error(ErrorCode::InvalidConfig, "mtry must be >= 1");
}

nlohmann::json to_json(const ClassifierSpec& spec) {
  nlohmann::json j;
  j["kind"] = to_string(spec.kind);
  j["criterion"] = to_string(spec.criterion);
  j["n_trees"] = spec.n_trees;
  j["k"] = spec.k;
  j["max_depth"] = spec.max_depth ? nlohmann::json(*spec.max_depth) : nlohmann::json(nullptr);
  j["min_samples_split"] = spec.min_samples_split;
  j["seed"] = spec.seed;
  j["mtry"] = spec.mtry ? nlohmann::json(*spec.mtry) : nlohmann::json(nullptr);
  j["bootstrap"] = spec.bootstrap;
  return j;
}

ClassifierSpec spec_from_json(const nlohmann::json& j) {
  ClassifierSpec spec;
  try {
    if (j.contains("kind")) {
      auto kind = classifier_kind_from_string(j.at("kind").get<std::string>());
      if (!kind) throw Error(ErrorCode::InvalidConfig, "unknown classifier kind");
      spec.kind = *kind;
    }
    if (j.contains("criterion")) {
      auto crit = criterion_from_string(j.at("criterion").get<std::string>());
      if (!crit) throw Error(ErrorCode::InvalidConfig, "unknown criterion");
      spec.criterion = *crit;
    }
    if (j.contains("n_trees")) spec.n_trees = j.at("n_trees").get<std::size_t>();
    if (j.contains("k")) spec.k = j.at("k").get<std::size_t>();
    if (j.contains("max_depth") && !j.at("max_depth").is_null())
      spec.max_depth = j.at("max_depth").get<std::size_t>();
    if (j.contains("min_samples_split"))
      spec.min_samples_split = j.at("min_samples_split").get<std::size_t>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("mtry") && !j.at("mtry").is_null()) spec.mtry = j.at("mtry").get<std::size_t>();
    if (j.contains("bootstrap")) spec.bootstrap = j.at("bootstrap").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("classifier spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

}  // namespace eqsig::ml
