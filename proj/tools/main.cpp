// Command line driver: convergence studies and the boundary counterexample.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "dstokes/error.hpp"
#include "dstokes/study.hpp"

namespace {

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream os(out_path);
  if (!os) throw dstokes::ValidationError("cannot open output file '" + out_path + "'");
  os << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stokes problem with non-homogeneous Dirichlet data: convergence studies"};
  app.require_subcommand(1);

  std::string out_path;
  std::string config_path;
  std::map<std::string, std::string> flags;
  const std::vector<std::string> keys = {"domain",       "alpha",     "element", "projector",
                                         "compat",       "levels",    "quad-degree", "corner-depth",
                                         "alpha-reg",    "solver",    "output"};

  auto* conv = app.add_subcommand("convergence", "run a refinement study against the exact singular solution");
  for (const auto& k : keys) conv->add_option("--" + k, flags[k]);
  conv->add_option("--config", config_path, "key=value file; flags take precedence");
  conv->add_option("--out", out_path, "write output to FILE instead of stdout");

  auto* counter = app.add_subcommand("counterexample", "boundary projections of a flux-free step datum");
  counter->add_option("--out", out_path, "write output to FILE instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*counter) {
      const auto report = dstokes::run_counterexample();
      emit(report.to_text(), out_path);
      return report.passed() ? 0 : 2;
    }

    dstokes::StudyConfig config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw dstokes::ValidationError("cannot read config file '" + config_path + "'");
      dstokes::apply_config_file(config, in);
    }
    for (const auto& k : keys) {
      if (conv->count("--" + k) > 0) dstokes::apply_setting(config, k, flags[k]);
    }
    config.validate();
    const auto result = dstokes::run_convergence(config);
    return emit(dstokes::emit_table(result.records, config.output, result.expected_order), out_path);
  } catch (const dstokes::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const dstokes::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  }
}
