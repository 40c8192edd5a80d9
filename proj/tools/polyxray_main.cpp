#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "polyxray/commands.hpp"

namespace cli = polyxray::cli;

int main(int argc, char** argv) {
  CLI::App app{"Restricted X-ray transform along polynomial curves: checks and experiments"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  const std::map<std::string, std::string> about{
      {"torsion", "exact torsion polynomial and sampled values"},
      {"decompose", "certified monomial-comparable pieces of the torsion"},
      {"jacobian-verify", "exact Jacobian factorization identities on random tuples"},
      {"jacobian-constant", "sampled Jacobian lower-bound ratios per piece"},
      {"adjoint-check", "<X f, g> against <f, X* g> for grid functions"},
      {"mixed-lb", "mixed-norm lower bound on box sets"},
      {"rwt-scan", "restricted weak-type ratio across dilation families"},
      {"sharpness-scan", "log-log scaling scans (sharp, zoom, theta0, flat)"},
      {"stoptime", "stopping-time interval with exact re-verification"},
      {"invariance", "affine transform laws and norm invariance"}};
  for (const auto& name : cli::command_names()) {
    const auto it = about.find(name);
    auto* sub = app.add_subcommand(name, it == about.end() ? "" : it->second);
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--out", out_dir, "output directory for report.json and artifacts");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (config_path.empty()) throw cli::UsageError("--config is required");
    cli::RunConfig rc;
    rc.config = polyxray::io::read_json_file(config_path);
    rc.seed = seed;
    rc.base_dir = std::filesystem::absolute(config_path).parent_path();
    const cli::RunReport report = cli::run_command(command, rc);
    if (!out_dir.empty())
      cli::write_outputs(report, out_dir);
    else
      std::cout << report.to_json().dump(2) << "\n";
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
    if (!report.error.empty()) std::cerr << "error: " << report.error << "\n";
    std::cerr << command << ": " << (report.passed ? "PASS" : "FAIL") << " (exit " << report.exit_code << ")\n";
    return report.exit_code;
  } catch (const cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return cli::kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return cli::kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kNonConvergence;
  }
}
