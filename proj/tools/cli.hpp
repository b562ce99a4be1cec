#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eqsig/backtest.hpp"
#include "eqsig/ml/spec.hpp"
#include "eqsig/pca_rank.hpp"
#include "eqsig/transform.hpp"

namespace eqsig::cli {

enum class Command { Transform, Evaluate, Rank, Backtest, Pipeline };

std::string_view to_string(Command command);

inline constexpr const char* kOutputDirEnv = "EQSIG_OUTPUT_DIR";
inline constexpr const char* kDefaultOutputDir = "eqsig-out";

struct RunConfig {
  std::filesystem::path data;
  std::filesystem::path output_dir = kDefaultOutputDir;
  transform::LabelConfig label;
  transform::SplitConfig split;
  ml::ClassifierSpec classifier;
  pca::RankConfig rank;
  backtest::BacktestConfig backtest;
  std::optional<std::string> sector_filter;
  std::optional<std::filesystem::path> feature_subset_file;
  std::optional<std::filesystem::path> model_file;
  bool by_sector = false;
};

struct Invocation {
  Command command = Command::Pipeline;
  RunConfig config;
  bool help = false;
  std::string help_text;
};

// `args` excludes the program name. Values come from flags, then the JSON
// file named by --config, then `env` (output directory only), then the
// built-in defaults. Throws Error{UnknownCommand | BadFlag | MissingRequired
// | InvalidConfig | IoError}.
Invocation parse_cli(const std::vector<std::string>& args,
                     const std::map<std::string, std::string>& env = {});

// Applies a JSON config document (keys mirror RunConfig) onto `cfg`.
void apply_config_json(const std::string& json_text, RunConfig& cfg);

// Runs the command's stages in workflow order and writes reports into the
// output directory. Returns the process exit status; diagnostics go to `err`
// and one summary line per stage to `out`.
int run_command(const Invocation& invocation, std::ostream& out, std::ostream& err);

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNumeric = 3;

int exit_code_for(const std::exception& e);

// Writes `contents` to `path` through a temporary file and a rename.
// Throws Error{IoError}.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace eqsig::cli
