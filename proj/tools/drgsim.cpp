// drgsim: run DRG / flooding geocast experiments from a JSON config.
//
//   drgsim run      --config cfg.json [--seed N] [--density D] [--protocol drg|flood]
//   drgsim sweep    --config cfg.json [--replicas N] [--jobs N]
//   drgsim theta    [x ...]
//   drgsim validate --config cfg.json
//
// run/sweep accept --out PATH and --format csv|json. Exit status is 0 on
// success, 1 on validation failure, 2 on usage or runtime errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "drg/config_json.hpp"
#include "drg/report.hpp"
#include "drg/scenario.hpp"

namespace {

struct OutputOptions {
  std::string out;
  std::string format = "csv";
};

void add_output_flags(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--out", o.out, "Output file (default: stdout)");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

void emit(const OutputOptions& o, const std::vector<drg::RunResult>& rows) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + o.out + " for writing");
    out = &file;
  }
  if (o.format == "json") {
    drg::write_json(*out, rows);
  } else {
    drg::write_csv(*out, rows);
  }
}

int report_violations(const std::string& path, const std::vector<std::string>& violations) {
  for (const auto& v : violations) std::cerr << path << ": " << v << '\n';
  return violations.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geocast protocol simulator (DRG and restricted flooding)"};
  app.require_subcommand(1);

  std::string config_path;
  OutputOptions output;
  std::optional<std::uint64_t> seed;
  std::optional<double> density;
  std::string protocol;
  std::optional<std::uint32_t> replicas;
  int jobs = 1;
  std::vector<double> xs;

  auto* run_cmd = app.add_subcommand("run", "Run one simulation");
  run_cmd->add_option("--config", config_path, "Experiment JSON")->required();
  run_cmd->add_option("--seed", seed, "Override the config seed");
  run_cmd->add_option("--density", density, "Density to run (default: first in config)");
  run_cmd->add_option("--protocol", protocol, "Protocol to run (default: first in config)")
      ->check(CLI::IsMember({"drg", "flood"}));
  add_output_flags(run_cmd, output);

  auto* sweep_cmd = app.add_subcommand("sweep", "Run densities x protocols x replicas");
  sweep_cmd->add_option("--config", config_path, "Experiment JSON")->required();
  sweep_cmd->add_option("--seed", seed, "Override the base seed");
  sweep_cmd->add_option("--replicas", replicas, "Override the replica count");
  sweep_cmd->add_option("--jobs", jobs, "Replicas to run concurrently")->check(CLI::PositiveNumber);
  add_output_flags(sweep_cmd, output);

  auto* theta_cmd = app.add_subcommand("theta", "Tabulate angle thresholds for coverage ratios");
  theta_cmd->add_option("x", xs, "Coverage-ratio thresholds in (0, 0.78]");

  auto* validate_cmd = app.add_subcommand("validate", "Check a config against parameter bounds");
  validate_cmd->add_option("--config", config_path, "Experiment JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (theta_cmd->parsed()) {
      if (xs.empty()) xs = {0.1, 0.2, 0.3, 0.391, 0.5, 0.6, 0.7, 0.78};
      const auto rows = drg::theta_table(xs);
      drg::write_theta_csv(std::cout, rows);
      return 0;
    }

    drg::ScenarioConfig cfg = drg::load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (replicas) cfg.replicas = *replicas;

    if (validate_cmd->parsed()) {
      const int rc = report_violations(config_path, drg::validate(cfg));
      if (rc == 0) std::cout << config_path << ": ok\n";
      return rc;
    }
    if (int rc = report_violations(config_path, drg::validate(cfg)); rc != 0) return rc;

    if (run_cmd->parsed()) {
      drg::ProtocolKind p = cfg.protocols.front();
      if (!protocol.empty()) p = protocol == "drg" ? drg::ProtocolKind::kDrg : drg::ProtocolKind::kFlood;
      const double d = density.value_or(cfg.densities.front());
      emit(output, {drg::run(cfg, p, d, cfg.seed)});
      return 0;
    }
    if (sweep_cmd->parsed()) {
      emit(output, drg::sweep(cfg, jobs));
      return 0;
    }
  } catch (const drg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
