#include "config.hpp"

#include <cmath>
#include <fstream>

#include "qwalknet/io.hpp"

namespace qwalknet::cli {

namespace {

template <typename T>
T field(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("config field '") + key + "': " + e.what());
  }
}

}  // namespace

CoinState parse_coin(const nlohmann::json& j, std::vector<std::string>& warnings) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
      j[1].size() != 2) {
    throw Error("config field 'coin0': expected [[re0, im0], [re1, im1]]");
  }
  CoinState c{cplx(j[0][0].get<double>(), j[0][1].get<double>()), cplx(j[1][0].get<double>(), j[1][1].get<double>())};
  const double norm = c.norm();
  if (norm == 0.0) throw Error("config field 'coin0': zero vector");
  if (std::abs(norm - 1.0) > 1e-9) {
    warnings.push_back("coin0 had norm " + io::format_double(norm) + "; normalized");
    c.c0 /= norm;
    c.c1 /= norm;
  }
  return c;
}

nlohmann::json coin_to_json(const CoinState& c) {
  return nlohmann::json::array({{c.c0.real(), c.c0.imag()}, {c.c1.real(), c.c1.imag()}});
}

ExperimentConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("config must be a JSON object");
  ExperimentConfig c;
  c.raw = j;
  c.n_vertices = field(j, "n_vertices", c.n_vertices);
  if (j.contains("alpha")) c.alpha = field(j, "alpha", 0.0);
  c.edge_alphas = field(j, "edge_alphas", c.edge_alphas);
  if (j.contains("sampler")) {
    const auto& s = j.at("sampler");
    InhomogeneousSampler smp;
    smp.mean_alpha = field(s, "mean_alpha", smp.mean_alpha);
    smp.sigma_fraction = field(s, "sigma_fraction", smp.sigma_fraction);
    smp.seed = field(s, "seed", smp.seed);
    c.sampler = smp;
  }
  if (j.contains("coin0")) c.coin0 = parse_coin(j.at("coin0"), c.warnings);
  c.n0 = field(j, "n0", c.n0);
  c.t_max = field(j, "t_max", c.t_max);
  c.engine = field(j, "engine", c.engine);
  c.seed = field(j, "seed", c.seed);
  if (j.contains("bipartition")) {
    const auto& b = j.at("bipartition");
    c.first_edge = field(b, "first_edge", c.first_edge);
    if (b.contains("count")) c.cut_edges = field(b, "count", 0);
  }
  c.epsilon = field(j, "epsilon", c.epsilon);
  if (j.contains("window")) c.window = field(j, "window", 0);
  c.negativity = field(j, "negativity", c.negativity);
  c.gram_dump = field(j, "gram_dump", c.gram_dump);
  return c;
}

nlohmann::json load_config_file(const std::string& path) {
  const std::string text = io::read_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // byte offset -> line number
    std::size_t line = 1;
    for (std::size_t k = 0; k < e.byte && k < text.size(); ++k) line += text[k] == '\n';
    throw Error(path + ":" + std::to_string(line) + ": " + e.what());
  }
}

NetworkSpec ExperimentConfig::network() const { return network(n_vertices); }

NetworkSpec ExperimentConfig::network(int n) const {
  const int sources = static_cast<int>(alpha.has_value()) + static_cast<int>(!edge_alphas.empty()) +
                      static_cast<int>(sampler.has_value());
  if (sources > 1) throw Error("config: give only one of 'alpha', 'edge_alphas', 'sampler'");
  if (!edge_alphas.empty()) {
    if (static_cast<int>(edge_alphas.size()) != n) throw Error("config: edge_alphas length differs from n_vertices");
    return NetworkSpec::make(n, edge_alphas);
  }
  if (sampler) return sample_inhomogeneous(*sampler, n);
  return NetworkSpec::homogeneous(n, alpha.value_or(0.5));
}

Bipartition ExperimentConfig::bipartition() const {
  return Bipartition::arc(n_vertices, first_edge, cut_edges.value_or(n_vertices / 2));
}

nlohmann::json ExperimentConfig::echo() const {
  nlohmann::json e = raw;
  e["n_vertices"] = n_vertices;
  e["coin0"] = coin_to_json(coin0);
  e["n0"] = n0;
  e["t_max"] = t_max;
  e["engine"] = engine;
  e["seed"] = seed;
  e["epsilon"] = epsilon;
  return e;
}

}  // namespace qwalknet::cli
