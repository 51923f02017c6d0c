#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qwalknet/common.hpp"
#include "qwalknet/estimator.hpp"
#include "qwalknet/network.hpp"

namespace qwalknet::cli {

/// Parameters shared by every subcommand. Values come from the JSON config
/// file first; command-line flags override them.
struct ExperimentConfig {
  nlohmann::json raw = nlohmann::json::object();

  int n_vertices = 10;
  std::optional<double> alpha;
  std::vector<double> edge_alphas;
  std::optional<InhomogeneousSampler> sampler;
  CoinState coin0 = CoinState::symmetric();
  int n0 = 0;
  int t_max = 100;
  std::string engine = "conditional";
  std::uint64_t seed = 1;
  int first_edge = 0;
  std::optional<int> cut_edges;
  double epsilon = 0.01;
  std::optional<int> window;
  bool negativity = true;
  bool gram_dump = false;
  std::vector<std::string> warnings;

  NetworkSpec network() const;
  NetworkSpec network(int n_vertices) const;
  Bipartition bipartition() const;
  nlohmann::json echo() const;
};

/// Reads the fields common to every subcommand out of `j`.
ExperimentConfig parse_config(const nlohmann::json& j);
nlohmann::json load_config_file(const std::string& path);

CoinState parse_coin(const nlohmann::json& j, std::vector<std::string>& warnings);
nlohmann::json coin_to_json(const CoinState& c);

}  // namespace qwalknet::cli
