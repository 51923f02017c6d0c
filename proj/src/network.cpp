#include "qwalknet/network.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>

namespace qwalknet {

NetworkSpec NetworkSpec::make(int n_vertices, std::vector<double> edge_alphas) {
  if (n_vertices < kMinVertices) {
    throw Error("network needs at least 3 vertices, got " + std::to_string(n_vertices));
  }
  if (n_vertices > kMaxVertices) {
    throw CapacityError("network size " + std::to_string(n_vertices) + " exceeds " +
                        std::to_string(kMaxVertices));
  }
  if (edge_alphas.size() != static_cast<std::size_t>(n_vertices)) {
    throw Error("ring needs one alpha per edge: expected " + std::to_string(n_vertices) +
                ", got " + std::to_string(edge_alphas.size()));
  }
  for (std::size_t e = 0; e < edge_alphas.size(); ++e) {
    const double a = edge_alphas[e];
    if (!(a >= 0.0 && a <= 0.5)) {
      throw Error("edge " + std::to_string(e) + ": alpha " + std::to_string(a) +
                  " outside [0, 0.5]; map a -> 1 - a first");
    }
  }
  return NetworkSpec(std::move(edge_alphas));
}

NetworkSpec NetworkSpec::homogeneous(int n_vertices, double alpha) {
  return make(n_vertices, std::vector<double>(static_cast<std::size_t>(std::max(n_vertices, 0)), alpha));
}

bool NetworkSpec::is_homogeneous() const {
  return std::all_of(alphas_.begin(), alphas_.end(), [&](double a) { return a == alphas_.front(); });
}

nlohmann::json NetworkSpec::to_json() const {
  return {{"n_vertices", n_vertices()}, {"edge_alphas", alphas_}};
}

NetworkSpec NetworkSpec::from_json(const nlohmann::json& j) {
  if (!j.contains("n_vertices") || !j.contains("edge_alphas")) {
    throw Error("network JSON needs \"n_vertices\" and \"edge_alphas\"");
  }
  return make(j.at("n_vertices").get<int>(), j.at("edge_alphas").get<std::vector<double>>());
}

NetworkSpec make_network(int n_vertices, std::vector<double> edge_alphas) {
  return NetworkSpec::make(n_vertices, std::move(edge_alphas));
}

double initial_network_entanglement(const NetworkSpec& spec) {
  const auto a = spec.edge_alphas();
  return std::accumulate(a.begin(), a.end(), 0.0) / static_cast<double>(spec.n_edges());
}

EdgeBasisIndex::EdgeBasisIndex(std::uint64_t value, int n_edges) : value_(value), n_edges_(n_edges) {
  if (n_edges < 1 || n_edges > 63) throw Error("edge count out of range");
  if (value >= (std::uint64_t{1} << n_edges)) {
    throw Error("basis index " + std::to_string(value) + " out of range for " +
                std::to_string(n_edges) + " edges");
  }
}

int EdgeBasisIndex::hamming_weight() const { return std::popcount(value_); }

std::string basis_string(EdgeBasisIndex index) {
  const int n = index.n_edges();
  std::string s(static_cast<std::size_t>(2 * n), '0');
  for (int k = 0; k < n; ++k) {
    const char bit = index.edge_bit(n - 1 - k) ? '1' : '0';
    s[static_cast<std::size_t>(2 * k)] = bit;
    s[static_cast<std::size_t>(2 * k + 1)] = bit;
  }
  return s;
}

std::string basis_string(std::uint64_t index, int n_edges) {
  return basis_string(EdgeBasisIndex(index, n_edges));
}

double weight(EdgeBasisIndex index, const NetworkSpec& spec) {
  if (index.n_edges() != spec.n_edges()) throw Error("basis index and network size differ");
  double f = 1.0;
  for (int e = 0; e < spec.n_edges(); ++e) {
    f *= index.edge_bit(e) ? std::sqrt(1.0 - spec.alpha(e)) : std::sqrt(spec.alpha(e));
  }
  return f;
}

std::vector<double> weights(const NetworkSpec& spec) {
  std::vector<double> out(spec.basis_size());
  for (std::uint64_t i = 0; i < spec.basis_size(); ++i) {
    out[i] = weight(EdgeBasisIndex(i, spec.n_edges()), spec);
  }
  return out;
}

Parity vertex_parity(EdgeBasisIndex index, int vertex) {
  const int n = index.n_edges();
  if (vertex < 0 || vertex >= n) throw Error("vertex out of range");
  const int left_edge = (vertex - 1 + n) % n;
  return index.edge_bit(left_edge) != index.edge_bit(vertex) ? Parity::odd : Parity::even;
}

std::uint64_t odd_vertex_mask(EdgeBasisIndex index) {
  const int n = index.n_edges();
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  const std::uint64_t v = index.value();
  // bit n of the rotation is edge (n-1 mod N)
  const std::uint64_t rotated = ((v << 1) | (v >> (n - 1))) & all;
  return v ^ rotated;
}

Bipartition Bipartition::arc(int n_edges, int first_edge, int count) {
  if (count < 1 || count >= n_edges) throw Error("arc must leave both parts non-empty");
  if (first_edge < 0 || first_edge >= n_edges) throw Error("arc start out of range");
  Bipartition cut;
  std::set<int> a;
  for (int k = 0; k < count; ++k) a.insert((first_edge + k) % n_edges);
  for (int e = 0; e < n_edges; ++e) {
    (a.count(e) ? cut.part_a_edges : cut.part_b_edges).push_back(e);
  }
  cut.kind = CutKind::l1;
  return cut;
}

Bipartition Bipartition::equipartition(int n_edges) { return arc(n_edges, 0, n_edges / 2); }

std::uint64_t Bipartition::part_a_mask() const {
  std::uint64_t m = 0;
  for (int e : part_a_edges) m |= std::uint64_t{1} << e;
  return m;
}

NegativityBound max_negativity_bound(const Bipartition& cut) {
  const double n_a_qubits = cut.qubits_a();
  const double n_a_edges = static_cast<double>(cut.part_a_edges.size());
  return {(std::exp2(n_a_qubits) - 1.0) / 2.0, (std::exp2(n_a_edges) - 1.0) / 2.0};
}

}  // namespace qwalknet
