// wkgeom: classification, transport, Berry phase, state-space and branch
// weight reports from JSON descriptors.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

// Writes next to the target, then renames over it.
bool write_atomic(const std::filesystem::path& target, const std::string& text) {
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << text;
    if (!out.flush()) return false;
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  return !ec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weyl-Kahler geometry toolkit"};
  app.fallthrough();
  app.require_subcommand(1);

  wkgeom::RunConfig config;
  std::string out_path;
  app.add_option("--tol", config.tolerance, "Residual tolerance")->capture_default_str();
  auto* steps = app.add_option("--steps", config.steps, "RK4 / quadrature steps")->capture_default_str();
  app.add_option("--seed", config.seed, "Sample seed")->capture_default_str();
  app.add_option("--lambda", config.lambda, "Holonomy quantum")->capture_default_str();
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  app.add_option("--format", config.format, "json or csv")->capture_default_str();

  auto* classify = app.add_subcommand("classify", "Classify a manifold descriptor");
  classify->add_option("manifold", config.inputs, "Manifold descriptor")->required();
  classify->add_option("--samples", config.samples, "Sample points")->capture_default_str();
  classify->add_option("--semi", config.semi, "auto, skip or require")->capture_default_str();

  auto* transport = app.add_subcommand("transport", "Parallel transport along a curve");
  transport->add_option("inputs", config.inputs, "Manifold, curve and optional vector")
      ->required()
      ->expected(2, 3);

  auto* berry = app.add_subcommand("berry", "Two-level geometric phase of a Bloch path");
  berry->add_option("path", config.inputs, "Bloch path descriptor")->required();

  auto* potential = app.add_subcommand("potential", "Projective chart, potential and metric of a state");
  potential->add_option("state", config.inputs, "State descriptor")->required();

  auto* weights = app.add_subcommand("weights", "Branch weights exp(n Lambda)");
  weights->add_option("--n", config.n_list, "Winding integers, in time order")->required();

  auto* report = app.add_subcommand("report", "Run every entry of a suite file");
  report->add_option("suite", config.inputs, "Suite descriptor")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  config.command = app.get_subcommands().front()->get_name();
  config.steps_explicit = steps->count() > 0;

  const wkgeom::Outcome outcome = wkgeom::run(config);
  std::string text;
  if (config.format == "csv") {
    text = wkgeom::to_csv(outcome.table);
    for (const auto& e : outcome.errors) std::cerr << e.dump() << "\n";
  } else {
    text = wkgeom::report(config, outcome).dump(2) + "\n";
  }

  if (out_path.empty()) {
    std::cout << text;
  } else if (!write_atomic(out_path, text)) {
    std::cerr << "cannot write " << out_path << "\n";
    return 2;
  }
  return outcome.exit_code;
}
