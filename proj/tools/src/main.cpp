#include <iostream>

#include <CLI11.hpp>

#include "agler_cli/app.hpp"

int main(int argc, char** argv) {
  CLI::App app{"agler-lab: finite interpolation diagnostics for test-function algebras"};
  agler::cli::Options options;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t grid = 0;
  std::string out_dir;

  app.add_option("command", options.command, "analyze | pick | grammian | carleson | realize | verify-theorem")
      ->required()
      ->check(CLI::IsMember(agler::cli::kCommands));
  app.add_option("--config", options.config_path, "config JSON path, or - for stdin")->required();
  auto* out_opt = app.add_option("--out", out_dir, "directory for <command>.json and <command>.csv");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed override");
  auto* samples_opt = app.add_option("--samples", samples, "number of sampled kernels");
  auto* grid_opt = app.add_option("--grid", grid, "alpha grid size for the symmetrized bidisc")
                       ->check(CLI::Range(std::size_t{8}, std::size_t{1} << 20));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return agler::cli::kInputError;
  }
  if (*out_opt) options.out_dir = out_dir;
  if (*seed_opt) options.seed = seed;
  if (*samples_opt) options.samples = samples;
  if (*grid_opt) options.grid = grid;
  return agler::cli::run(options, std::cin, std::cout, std::cerr);
}
