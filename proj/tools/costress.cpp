#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "costress/jobs.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Verification jobs for the indeterminate couple stress model"};
  app.set_version_flag("--version", costress::kVersion);
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir = "costress_out";
  std::uint64_t seed = 0;
  int quadrature_order = 0;

  for (const auto& name : costress::job_commands()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON job configuration")->required();
    sub->add_option("--out", out_dir, "Output directory for report.json and CSV tables");
    sub->add_option("--seed", seed, "Seed for randomized checks (overrides the config)");
    sub->add_option("--quadrature-order", quadrature_order,
                    "Quadrature order per direction (overrides the config)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const CLI::App* sub = app.get_subcommands().front();
  costress::JobOptions options;
  if (sub->count("--seed") > 0) options.seed = seed;
  if (sub->count("--quadrature-order") > 0) options.quadrature_order = quadrature_order;

  return costress::run_job(sub->get_name(), config_path, out_dir, options, std::cout);
}
