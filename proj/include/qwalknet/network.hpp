#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "qwalknet/common.hpp"

namespace qwalknet {

/// Ring network: N vertices, N edges, two qubits per vertex. Edge e joins
/// vertices e and e+1 (mod N) and carries sqrt(a)|00> + sqrt(1-a)|11>.
class NetworkSpec {
 public:
  static constexpr int kMinVertices = 3;
  static constexpr int kMaxVertices = 30;

  /// Validates and builds a spec. Alphas must already lie in [0, 0.5]; values
  /// in (0.5, 1] have to be mapped through a -> 1 - a by the caller.
  static NetworkSpec make(int n_vertices, std::vector<double> edge_alphas);
  static NetworkSpec homogeneous(int n_vertices, double alpha);

  int n_vertices() const { return static_cast<int>(alphas_.size()); }
  int n_edges() const { return n_vertices(); }
  std::span<const double> edge_alphas() const { return alphas_; }
  double alpha(int edge) const { return alphas_.at(static_cast<std::size_t>(edge)); }
  bool is_homogeneous() const;
  std::uint64_t basis_size() const { return std::uint64_t{1} << n_vertices(); }
  const char* topology() const { return "ring"; }

  nlohmann::json to_json() const;
  static NetworkSpec from_json(const nlohmann::json& j);

 private:
  explicit NetworkSpec(std::vector<double> alphas) : alphas_(std::move(alphas)) {}
  std::vector<double> alphas_;
};

NetworkSpec make_network(int n_vertices, std::vector<double> edge_alphas);

/// Mean of the edge parameters.
double initial_network_entanglement(const NetworkSpec& spec);

/// Label of a parity-even network configuration. Bit e (LSB = edge 0) is the
/// shared bit of edge e's two qubits.
class EdgeBasisIndex {
 public:
  EdgeBasisIndex(std::uint64_t value, int n_edges);

  std::uint64_t value() const { return value_; }
  int n_edges() const { return n_edges_; }
  bool edge_bit(int edge) const { return ((value_ >> edge) & 1u) != 0; }
  int hamming_weight() const;

 private:
  std::uint64_t value_;
  int n_edges_;
};

/// 2N-character display string, MSB first, every edge bit duplicated:
/// (i=1, N=3) -> "000011".
std::string basis_string(EdgeBasisIndex index);
std::string basis_string(std::uint64_t index, int n_edges);

/// Superposition weight f_i: product of sqrt(a_e) over edges with bit 0 and
/// sqrt(1 - a_e) over edges with bit 1.
double weight(EdgeBasisIndex index, const NetworkSpec& spec);
std::vector<double> weights(const NetworkSpec& spec);

enum class Parity { even, odd };

/// Vertex n holds one qubit of edge (n-1 mod N) and one of edge n.
Parity vertex_parity(EdgeBasisIndex index, int vertex);

/// Bit n set iff vertex n has odd parity in configuration `index`.
std::uint64_t odd_vertex_mask(EdgeBasisIndex index);

enum class CutKind { l1, l3 };

struct Bipartition {
  std::vector<int> part_a_edges;
  std::vector<int> part_b_edges;
  CutKind kind = CutKind::l1;

  /// Contiguous arc of `count` edges starting at `first_edge` as part A.
  static Bipartition arc(int n_edges, int first_edge, int count);
  /// Arc of floor(N/2) edges starting at edge 0.
  static Bipartition equipartition(int n_edges);

  int n_edges() const {
    return static_cast<int>(part_a_edges.size() + part_b_edges.size());
  }
  std::uint64_t part_a_mask() const;
  /// Number of physical qubits on side A.
  int qubits_a() const { return 2 * static_cast<int>(part_a_edges.size()); }
};

struct NegativityBound {
  double physical;   // (2^{n_A} - 1)/2, n_A physical qubits in A
  double effective;  // (2^{|A edges|} - 1)/2 on the parity-even subspace
};

NegativityBound max_negativity_bound(const Bipartition& cut);

}  // namespace qwalknet
