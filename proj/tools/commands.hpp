#pragma once

#include <filesystem>

#include <json.hpp>

#include "config.hpp"

namespace qwalknet::cli {

struct CommandContext {
  ExperimentConfig config;
  std::filesystem::path out_dir;
  bool inject_fault = false;
};

int cmd_simulate(const CommandContext& ctx);
int cmd_stationary(const CommandContext& ctx);
int cmd_estimate(const CommandContext& ctx);
int cmd_verify(const CommandContext& ctx);
int cmd_dcqw(const CommandContext& ctx);
int cmd_fourier(const CommandContext& ctx);

/// Invariant checks used by `verify`. With `inject_fault` the conditional
/// engine runs with a sign-flipped coin.
nlohmann::json run_verify_suite(bool inject_fault);

}  // namespace qwalknet::cli
