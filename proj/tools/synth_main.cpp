#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "synth.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Write a synthetic market CSV"};
  std::size_t days = 500;
  std::uint64_t seed = 1;
  std::string out;
  app.add_option("--days", days, "trading days per ticker");
  app.add_option("--seed", seed, "generator seed");
  app.add_option("-o,--out", out, "output file (default: stdout)");
  CLI11_PARSE(app, argc, argv);

  const std::string csv = eqsig::synth::market_csv(eqsig::synth::default_market(days, seed));
  if (out.empty()) {
    std::cout << csv;
    return 0;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) {
    std::cerr << "eqsig-synth: cannot write " << out << '\n';
    return 2;
  }
  file << csv;
  return 0;
}
