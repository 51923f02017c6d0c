#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>
#include <tbb/global_control.h>

#include "commands.hpp"
#include "config.hpp"

using namespace qwalknet;

int main(int argc, char** argv) {
  CLI::App app{"Coined quantum walks on entangled ring networks"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::string> engine;
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
  std::optional<int> n_vertices;
  std::optional<double> alpha;
  std::optional<int> t_max;
  bool inject_fault = false;

  app.add_option("--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--engine", engine, "exact | conditional")->check(CLI::IsMember({"exact", "conditional"}));
  app.add_option("--threads", threads, "Worker threads (default: QWALKNET_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("-N,--n-vertices", n_vertices, "Ring size");
  app.add_option("--alpha", alpha, "Homogeneous edge parameter in [0, 0.5]");
  app.add_option("--t-max", t_max, "Number of steps");

  auto* simulate = app.add_subcommand("simulate", "Time series: distribution, entropy, negativity, distance");
  auto* stationary = app.add_subcommand("stationary", "Stationary distributions, moments, variance fit");
  auto* estimate = app.add_subcommand("estimate", "Infer the mean edge parameter from start-site occupation");
  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  verify->add_flag("--inject-fault", inject_fault, "Run the conditional engine with a sign-flipped coin");
  auto* dcqw = app.add_subcommand("dcqw", "Standard Hadamard walk on a line or ring");
  auto* fourier = app.add_subcommand("fourier", "Momentum-sector coupling of the step operator");
  for (auto* sub : {simulate, stationary, estimate, verify, dcqw, fourier}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  std::unique_ptr<tbb::global_control> limit;
  if (!threads) {
    if (const char* env = std::getenv("QWALKNET_THREADS")) {
      const int k = std::atoi(env);
      if (k > 0) threads = k;
    }
  }
  if (threads) limit = std::make_unique<tbb::global_control>(tbb::global_control::max_allowed_parallelism,
                                                              static_cast<std::size_t>(*threads));

  try {
    nlohmann::json raw = config_path.empty() ? nlohmann::json::object() : cli::load_config_file(config_path);
    if (engine) raw["engine"] = *engine;
    if (seed) raw["seed"] = *seed;
    if (n_vertices) raw["n_vertices"] = *n_vertices;
    if (alpha) raw["alpha"] = *alpha;
    if (t_max) raw["t_max"] = *t_max;

    cli::CommandContext ctx{cli::parse_config(raw), out_dir, inject_fault};
    if (*simulate) return cli::cmd_simulate(ctx);
    if (*stationary) return cli::cmd_stationary(ctx);
    if (*estimate) return cli::cmd_estimate(ctx);
    if (*verify) return cli::cmd_verify(ctx);
    if (*dcqw) return cli::cmd_dcqw(ctx);
    if (*fourier) return cli::cmd_fourier(ctx);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
