#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "eqsig/csv.hpp"
#include "eqsig/error.hpp"
#include "eqsig/evaluation.hpp"
#include "eqsig/ingest.hpp"
#include "eqsig/ml/model.hpp"
#include "eqsig/trading.hpp"

namespace eqsig::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(Command command) {
  switch (command) {
    case Command::Transform: return "transform";
    case Command::Evaluate: return "evaluate";
    case Command::Rank: return "rank";
    case Command::Backtest: return "backtest";
    case Command::Pipeline: return "pipeline";
  }
  return "?";
}

namespace {

std::optional<Command> command_from_string(std::string_view word) {
  for (auto c : {Command::Transform, Command::Evaluate, Command::Rank, Command::Backtest,
                 Command::Pipeline})
    if (to_string(c) == word) return c;
  return std::nullopt;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<int> parse_horizon_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int h = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(h);
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadFlag, "--horizons: '" + item + "' is not an integer");
    }
  }
  return out;
}

// All command-line flags; `set(name)` reports whether a flag was given.
struct Flags {
  std::string config, data, out, model, criterion, horizons, sector, features, model_file;
  std::uint64_t seed = 0;
  std::size_t trees = 0, k = 0, max_depth = 0, min_samples_split = 0, mtry = 0;
  std::size_t select_top = 0, components = 0;
  double train_fraction = 0, up = 0, down = 0, threshold = 0, fee = 0, tp = 0, sl = 0;
  int signal_horizon = 0;
  bool by_sector = false, no_liquidate = false;
};

void apply_flags(const CLI::App& app, const Flags& f, RunConfig& cfg) {
  auto set = [&](const char* name) { return app.get_option(name)->count() > 0; };

  if (set("--data")) cfg.data = f.data;
  if (set("--out")) cfg.output_dir = f.out;
  if (set("--seed")) {
    cfg.split.seed = f.seed;
    cfg.classifier.seed = f.seed;
  }
  if (set("--model")) {
    auto kind = ml::classifier_kind_from_string(f.model);
    if (!kind) throw Error(ErrorCode::BadFlag, "--model: unknown classifier '" + f.model + "'");
    cfg.classifier.kind = *kind;
  }
  if (set("--criterion")) {
    auto crit = ml::criterion_from_string(f.criterion);
    if (!crit) throw Error(ErrorCode::BadFlag, "--criterion: expected gini or entropy");
    cfg.classifier.criterion = *crit;
  }
  if (set("--trees")) cfg.classifier.n_trees = f.trees;
  if (set("--k")) cfg.classifier.k = f.k;
  if (set("--max-depth")) cfg.classifier.max_depth = f.max_depth;
  if (set("--min-samples-split")) cfg.classifier.min_samples_split = f.min_samples_split;
  if (set("--mtry")) cfg.classifier.mtry = f.mtry;
  if (set("--train-fraction")) cfg.split.train_fraction = f.train_fraction;
  if (set("--horizons")) cfg.label.horizons = parse_horizon_list(f.horizons);
  if (set("--up-threshold")) cfg.label.up_threshold = f.up;
  if (set("--down-threshold")) cfg.label.down_threshold = f.down;
  if (set("--by-sector")) cfg.by_sector = f.by_sector;
  if (set("--sector")) cfg.sector_filter = f.sector;
  if (set("--features")) cfg.feature_subset_file = fs::path(f.features);
  if (set("--model-file")) cfg.model_file = fs::path(f.model_file);
  if (set("--select-top")) cfg.rank.top_k = f.select_top;
  if (set("--components")) {
    cfg.rank.n_components = f.components;
    cfg.rank.weights.clear();
    for (std::size_t i = f.components; i > 0; --i) cfg.rank.weights.push_back(static_cast<int>(i));
  }
  if (set("--contribution-threshold")) cfg.rank.contribution_threshold = f.threshold;
  if (set("--signal-horizon")) cfg.backtest.signal_horizon = f.signal_horizon;
  if (set("--fee")) cfg.backtest.fee_per_transaction = Money::from_dollars(f.fee);
  if (set("--take-profit")) cfg.backtest.take_profit_fraction = f.tp;
  if (set("--stop-loss")) cfg.backtest.stop_loss_fraction = f.sl;
  if (set("--no-liquidate")) cfg.backtest.liquidate_at_end = !f.no_liquidate;
}

void validate(const RunConfig& cfg) {
  cfg.label.validate();
  cfg.classifier.validate();
  cfg.rank.validate();
  cfg.backtest.validate();
  if (!(cfg.split.train_fraction > 0.0 && cfg.split.train_fraction < 1.0))
    throw Error(ErrorCode::InvalidConfig, "train_fraction must be in (0, 1)");
}

}  // namespace

void apply_config_json(const std::string& json_text, RunConfig& cfg) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("config is not valid JSON: ") + e.what());
  }
  try {
    if (doc.contains("data")) cfg.data = doc["data"].get<std::string>();
    if (doc.contains("output_dir")) cfg.output_dir = doc["output_dir"].get<std::string>();
    if (doc.contains("label")) {
      const auto& l = doc["label"];
      if (l.contains("horizons")) cfg.label.horizons = l["horizons"].get<std::vector<int>>();
      if (l.contains("up_threshold")) cfg.label.up_threshold = l["up_threshold"].get<double>();
      if (l.contains("down_threshold")) cfg.label.down_threshold = l["down_threshold"].get<double>();
    }
    if (doc.contains("split")) {
      const auto& s = doc["split"];
      if (s.contains("train_fraction")) cfg.split.train_fraction = s["train_fraction"].get<double>();
      if (s.contains("seed")) cfg.split.seed = s["seed"].get<std::uint64_t>();
    }
    if (doc.contains("classifier")) {
      // Unspecified keys keep their current values.
      json merged = ml::to_json(cfg.classifier);
      merged.update(doc["classifier"]);
      cfg.classifier = ml::spec_from_json(merged);
    }
    if (doc.contains("rank")) {
      const auto& r = doc["rank"];
      if (r.contains("n_components")) cfg.rank.n_components = r["n_components"].get<std::size_t>();
      if (r.contains("contribution_threshold"))
        cfg.rank.contribution_threshold = r["contribution_threshold"].get<double>();
      if (r.contains("weights")) cfg.rank.weights = r["weights"].get<std::vector<int>>();
      if (r.contains("top_k")) cfg.rank.top_k = r["top_k"].get<std::size_t>();
    }
    if (doc.contains("backtest")) {
      const auto& b = doc["backtest"];
      if (b.contains("fee_per_transaction"))
        cfg.backtest.fee_per_transaction = Money::from_dollars(b["fee_per_transaction"].get<double>());
      if (b.contains("take_profit_fraction"))
        cfg.backtest.take_profit_fraction = b["take_profit_fraction"].get<double>();
      if (b.contains("stop_loss_fraction"))
        cfg.backtest.stop_loss_fraction = b["stop_loss_fraction"].get<double>();
      if (b.contains("signal_horizon")) cfg.backtest.signal_horizon = b["signal_horizon"].get<int>();
      if (b.contains("liquidate_at_end"))
        cfg.backtest.liquidate_at_end = b["liquidate_at_end"].get<bool>();
    }
    if (doc.contains("sector_filter")) cfg.sector_filter = doc["sector_filter"].get<std::string>();
    if (doc.contains("feature_subset_file"))
      cfg.feature_subset_file = fs::path(doc["feature_subset_file"].get<std::string>());
    if (doc.contains("model_file")) cfg.model_file = fs::path(doc["model_file"].get<std::string>());
    if (doc.contains("by_sector")) cfg.by_sector = doc["by_sector"].get<bool>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("config: ") + e.what());
  }
}

Invocation parse_cli(const std::vector<std::string>& args,
                     const std::map<std::string, std::string>& env) {
  Invocation inv;
  if (args.empty()) throw Error(ErrorCode::MissingRequired, "command");

  CLI::App app{"Equity signal pipeline: transform, evaluate, rank, backtest"};
  Flags f;
  app.add_option("--config", f.config, "JSON config file (keys mirror the run config)");
  app.add_option("--data", f.data, "market CSV or transformed dataset CSV");
  app.add_option("--out", f.out, "output directory");
  app.add_option("--seed", f.seed, "seed for the split and the classifier");
  app.add_option("--model", f.model, "decision-tree | random-forest | knn | gaussian-nb");
  app.add_option("--criterion", f.criterion, "gini | entropy");
  app.add_option("--trees", f.trees, "forest size");
  app.add_option("--k", f.k, "neighbours for knn");
  app.add_option("--max-depth", f.max_depth, "tree depth limit");
  app.add_option("--min-samples-split", f.min_samples_split, "smallest node that may split");
  app.add_option("--mtry", f.mtry, "features sampled per forest split");
  app.add_option("--train-fraction", f.train_fraction, "training share of the split");
  app.add_option("--horizons", f.horizons, "comma-separated label horizons");
  app.add_option("--up-threshold", f.up, "Buy when later close >= this * close");
  app.add_option("--down-threshold", f.down, "Sell when later close <= this * close");
  app.add_flag("--by-sector", f.by_sector, "evaluate each sector separately as well");
  app.add_option("--sector", f.sector, "restrict to one sector");
  app.add_option("--features", f.features, "file listing the feature subset to use");
  app.add_option("--model-file", f.model_file, "backtest with a saved model.json");
  app.add_option("--select-top", f.select_top, "number of PCA-ranked features to select");
  app.add_option("--components", f.components, "principal components scored");
  app.add_option("--contribution-threshold", f.threshold, "|loading| needed to contribute");
  app.add_option("--signal-horizon", f.signal_horizon, "label horizon that drives trading");
  app.add_option("--fee", f.fee, "USD per transaction");
  app.add_option("--take-profit", f.tp, "take-profit fraction");
  app.add_option("--stop-loss", f.sl, "stop-loss fraction");
  app.add_flag("--no-liquidate", f.no_liquidate, "leave the final position open");

  if (args[0] == "-h" || args[0] == "--help") {
    inv.help = true;
    inv.help_text = "usage: eqsig <transform|evaluate|rank|backtest|pipeline> [flags]\n" + app.help();
    return inv;
  }
  auto command = command_from_string(args[0]);
  if (!command) throw Error(ErrorCode::UnknownCommand, args[0]);
  inv.command = *command;

  std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    inv.help = true;
    inv.help_text = "usage: eqsig " + std::string(to_string(inv.command)) + " [flags]\n" + app.help();
    return inv;
  } catch (const CLI::ExtrasError& e) {
    for (std::size_t i = 1; i < args.size(); ++i) {
      const std::string name = args[i].substr(0, args[i].find('='));
      if (name.starts_with("-") && app.get_option_no_throw(name) == nullptr)
        throw Error(ErrorCode::BadFlag, "unknown flag " + name);
    }
    throw Error(ErrorCode::BadFlag, e.what());
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorCode::BadFlag, e.what());
  }

  RunConfig cfg;
  if (auto it = env.find(kOutputDirEnv); it != env.end() && !it->second.empty())
    cfg.output_dir = it->second;
  if (app.get_option("--config")->count() > 0) apply_config_json(read_file(f.config), cfg);
  apply_flags(app, f, cfg);
  validate(cfg);
  inv.config = std::move(cfg);
  return inv;
}

int exit_code_for(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    switch (category_of(err->code())) {
      case ErrorCategory::Usage: return kExitUsage;
      case ErrorCategory::Data: return kExitData;
      case ErrorCategory::Numeric: return kExitNumeric;
    }
  }
  return kExitData;
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot rename into " + path.string());
  }
}

namespace {

std::string safe_file_part(const std::string& name) {
  std::string out;
  for (char c : name) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                    c == '.' || c == '-' || c == '_';
    out.push_back(ok ? c : '_');
  }
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<std::string> read_feature_list(const fs::path& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::stringstream items(line);
    std::string item;
    while (std::getline(items, item, ',')) {
      auto trimmed = std::string(csv::trim(item));
      if (!trimmed.empty() && trimmed.back() == '\r') trimmed.pop_back();
      if (!trimmed.empty()) names.push_back(trimmed);
    }
  }
  if (names.empty()) throw Error(ErrorCode::InvalidConfig, "no features listed in " + path.string());
  return names;
}

class Runner {
 public:
  Runner(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  std::string stage = "setup";

  void load() {
    stage = "load";
    if (cfg_.data.empty()) throw Error(ErrorCode::MissingRequired, "--data");
    if (!fs::exists(cfg_.data)) throw Error(ErrorCode::IoError, "no such file: " + cfg_.data.string());
    const std::string text = read_file(cfg_.data);
    const auto header_end = text.find('\n');
    const std::string header = text.substr(0, header_end);
    std::istringstream in(text);
    if (header.find("label_day") != std::string::npos) {
      dataset_ = transform::read_dataset_csv(in);
      out_ << "load: " << dataset_.rows.size() << " dataset rows from " << cfg_.data.string() << '\n';
    } else {
      const auto raw = ingest::parse_market_csv(in);
      const auto clean = ingest::validate_and_clean(raw);
      const auto series = ingest::partition_by_ticker(clean);
      dataset_ = transform::build_dataset(series, cfg_.label);
      out_ << "load: " << raw.rows.size() << " market rows, " << clean.rows.size() << " clean, "
           << series.size() << " tickers, " << dataset_.rows.size() << " feature rows\n";
    }
    if (cfg_.sector_filter) {
      std::erase_if(dataset_.rows, [&](const transform::FeatureRow& r) {
        auto it = dataset_.sectors.find(r.ticker);
        return it == dataset_.sectors.end() || it->second != *cfg_.sector_filter;
      });
    }
    if (dataset_.rows.empty()) throw Error(ErrorCode::EmptyDataset, "no feature rows after loading");
  }

  void make_output_dir() {
    std::error_code ec;
    fs::create_directories(cfg_.output_dir, ec);
    if (ec || !fs::is_directory(cfg_.output_dir))
      throw Error(ErrorCode::IoError, "cannot create output directory " + cfg_.output_dir.string());
  }

  void write(const std::string& name, const std::string& contents) {
    write_file_atomic(cfg_.output_dir / name, contents);
  }

  void run_transform() {
    stage = "transform";
    std::ostringstream csv_out;
    transform::write_dataset_csv(dataset_, csv_out);
    write("dataset.csv", csv_out.str());
    out_ << "transform: wrote dataset.csv (" << dataset_.rows.size() << " rows, "
         << dataset_.feature_names.size() << " features)\n";
  }

  // Dataset restricted to the configured feature subset, if any.
  transform::Dataset modelling_dataset(const std::optional<std::vector<std::string>>& features) const {
    if (features) return dataset_.project(*features);
    if (cfg_.feature_subset_file) return dataset_.project(read_feature_list(*cfg_.feature_subset_file));
    return dataset_;
  }

  void run_evaluate() {
    stage = "evaluate";
    const auto ds = modelling_dataset(std::nullopt);
    std::vector<eval::EvaluationReport> reports;
    std::vector<ml::TrainedModel> models;

    const auto split = transform::shuffle_split(ds.rows.size(), cfg_.split);
    const auto train = transform::select_rows(ds.rows, split.train);
    const auto test = transform::select_rows(ds.rows, split.test);
    reports.push_back(eval::evaluate_per_horizon(cfg_.classifier, ds.feature_names, ds.horizons,
                                                 train, test, &models));

    if (cfg_.by_sector) {
      for (const auto& [sector, rows] : transform::group_by_sector(ds.rows, ds.sectors)) {
        if (rows.size() < 2) continue;
        const auto s = transform::shuffle_split(rows.size(), cfg_.split);
        auto report = eval::evaluate_per_horizon(cfg_.classifier, ds.feature_names, ds.horizons,
                                                 transform::select_rows(rows, s.train),
                                                 transform::select_rows(rows, s.test));
        report.sector = sector;
        reports.push_back(std::move(report));
      }
    }

    std::ostringstream csv_out;
    eval::write_metrics_csv(reports, csv_out);
    write("metrics.csv", csv_out.str());
    json doc = {{"seed", cfg_.split.seed},
                {"train_fraction", cfg_.split.train_fraction},
                {"n_rows", ds.rows.size()},
                {"reports", json::array()}};
    for (const auto& r : reports) doc["reports"].push_back(eval::to_json(r));
    write("metrics.json", dump(doc));

    for (const auto& m : models)
      if (m.horizon == cfg_.backtest.signal_horizon) write("model.json", dump(m.to_json()));

    for (const auto& r : reports) {
      const auto best = std::max_element(r.horizons.begin(), r.horizons.end(),
                                         [](const auto& a, const auto& b) { return a.micro_f1 < b.micro_f1; });
      out_ << "evaluate: " << (r.sector ? *r.sector : std::string("all sectors")) << ", "
           << ml::to_string(r.spec.kind) << ", " << r.horizons.size() << " horizons, best micro-F1 "
           << csv::format_double(best->micro_f1) << " at day " << best->horizon << '\n';
    }
  }

  std::vector<std::string> run_rank() {
    stage = "rank";
    const auto ds = modelling_dataset(std::nullopt);
    const auto split = transform::shuffle_split(ds.rows.size(), cfg_.split);
    const auto train = transform::select_rows(ds.rows, split.train);
    const auto ranking = pca::rank_features(train, ds.feature_names, cfg_.rank);

    std::ostringstream ranking_csv, variance_csv, selected;
    pca::write_ranking_csv(ranking, ranking_csv);
    pca::write_variance_csv(ranking, variance_csv);
    for (const auto& name : ranking.selected) selected << name << '\n';
    write("ranking.csv", ranking_csv.str());
    write("variance.csv", variance_csv.str());
    write("selected_features.txt", selected.str());
    json doc = pca::to_json(ranking);
    doc["seed"] = cfg_.split.seed;
    write("ranking.json", dump(doc));

    const std::size_t shown = std::min<std::size_t>(cfg_.rank.n_components, ranking.variance.cumulative.size());
    out_ << "rank: top " << ranking.selected.size() << " features";
    for (const auto& name : ranking.selected) out_ << ' ' << name;
    out_ << "; first " << shown << " components explain "
         << csv::format_double(ranking.variance.cumulative[shown - 1]) << " of variance"
         << (ranking.padded ? " (selection padded)" : "") << '\n';
    return ranking.selected;
  }

  void run_backtest(const std::optional<std::vector<std::string>>& features) {
    stage = "backtest";
    ml::TrainedModel model;
    if (cfg_.model_file) {
      model = ml::TrainedModel::from_json(json::parse(read_file(*cfg_.model_file)));
    } else {
      const auto ds = modelling_dataset(features);
      const auto slot = ds.horizon_slot(cfg_.backtest.signal_horizon);
      if (!slot) {
        throw Error(ErrorCode::InvalidConfig, "signal horizon " +
                                                  std::to_string(cfg_.backtest.signal_horizon) +
                                                  " is not a labelled horizon");
      }
      const auto split = transform::shuffle_split(ds.rows.size(), cfg_.split);
      const auto train = transform::select_rows(ds.rows, split.train);
      model = ml::train_model(cfg_.classifier, train, *slot, cfg_.backtest.signal_horizon,
                              ds.feature_names);
    }
    write("model.json", dump(model.to_json()));

    const auto runs = backtest::backtest_dataset(dataset_, model, cfg_.backtest, cfg_.split.train_fraction);
    std::ostringstream summary;
    summary << "ticker,profit,initial_price,return_percentage,n_trades\n";
    for (const auto& run : runs) {
      const std::string part = safe_file_part(run.ticker);
      std::ostringstream trades;
      backtest::write_trade_log_csv(run.report.trades, trades);
      write("trades_" + part + ".csv", trades.str());

      json doc = backtest::to_json(run.report);
      doc["ticker"] = run.ticker;
      doc["sector"] = dataset_.sectors.count(run.ticker) ? dataset_.sectors.at(run.ticker) : "";
      doc["seed"] = cfg_.split.seed;
      doc["model"] = ml::to_string(model.spec.kind);
      doc["features"] = model.features;
      doc["signal_horizon"] = model.horizon;
      doc["fee_per_transaction"] = cfg_.backtest.fee_per_transaction.to_string();
      doc["take_profit_fraction"] = cfg_.backtest.take_profit_fraction;
      doc["stop_loss_fraction"] = cfg_.backtest.stop_loss_fraction;
      doc["window_start"] = format_iso_date(run.bars.front().date);
      doc["window_end"] = format_iso_date(run.bars.back().date);
      doc["bars"] = run.bars.size();
      write("backtest_" + part + ".json", dump(doc));

      summary << csv::join_line({run.ticker, run.report.total_profit.to_string(),
                                 run.report.initial_price.to_string(),
                                 csv::format_double(run.report.return_percentage),
                                 std::to_string(run.report.trades.size())})
              << '\n';
      out_ << "backtest: " << run.ticker << " " << run.report.trades.size() << " trades, profit $"
           << run.report.total_profit.to_string() << ", return "
           << csv::format_double(run.report.return_percentage) << "%\n";
    }
    write("backtest_summary.csv", summary.str());
  }

 private:
  const RunConfig& cfg_;
  std::ostream& out_;
  transform::Dataset dataset_;
};

}  // namespace

int run_command(const Invocation& invocation, std::ostream& out, std::ostream& err) {
  if (invocation.help) {
    out << invocation.help_text;
    return kExitOk;
  }
  Runner runner(invocation.config, out);
  try {
    runner.load();
    runner.stage = "output";
    runner.make_output_dir();
    switch (invocation.command) {
      case Command::Transform:
        runner.run_transform();
        break;
      case Command::Evaluate:
        runner.run_evaluate();
        break;
      case Command::Rank:
        runner.run_rank();
        break;
      case Command::Backtest:
        runner.run_backtest(std::nullopt);
        break;
      case Command::Pipeline: {
        runner.run_transform();
        runner.run_evaluate();
        auto selected = runner.run_rank();
        runner.run_backtest(selected);
        break;
      }
    }
  } catch (const std::exception& e) {
    err << "eqsig " << to_string(invocation.command) << ": " << runner.stage << ": " << e.what()
        << '\n';
    return exit_code_for(e);
  }
  return kExitOk;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::map<std::string, std::string> env;
  if (const char* dir = std::getenv(kOutputDirEnv)) env[kOutputDirEnv] = dir;
  Invocation inv;
  try {
    inv = parse_cli(args, env);
  } catch (const std::exception& e) {
    err << "eqsig: " << e.what() << '\n';
    if (const auto* ee = dynamic_cast<const Error*>(&e); ee && ee->code() == ErrorCode::IoError)
      return kExitData;
    return kExitUsage;
  }
  return run_command(inv, out, err);
}

}  // namespace eqsig::cli
