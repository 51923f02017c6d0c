#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

#include "qwalknet/common.hpp"
#include "qwalknet/network.hpp"
#include "qwalknet/walker.hpp"

namespace qwalknet {

inline constexpr int kDefaultExactCap = 8;

/// Unreduced state over network (2N qubits) x coin x position.
///
/// Linear index = g * 2N + c * N + n, where bit q of g is network qubit q.
/// Qubits are edge-major: edge e owns qubits 2e (at vertex e) and 2e+1 (at
/// vertex e+1), so vertex n holds qubits 2((n-1) mod N)+1 and 2n.
class FullState {
 public:
  FullState(int n_vertices, CVector amplitudes, int time = 0);

  int n_vertices() const { return n_; }
  int n_qubits() const { return 2 * n_; }
  int time() const { return t_; }
  std::uint64_t n_configs() const { return std::uint64_t{1} << (2 * n_); }
  Eigen::Index walker_dim() const { return 2 * n_; }
  const CVector& amplitudes() const { return amps_; }
  CVector& amplitudes() { return amps_; }
  cplx amplitude(std::uint64_t g, int coin, int position) const {
    return amps_[static_cast<Eigen::Index>(g) * 2 * n_ + coin * n_ + position];
  }

  /// Walker-major view: column g holds the 2N walker amplitudes of config g.
  Eigen::Map<const CMatrix> by_config() const {
    return {amps_.data(), 2 * n_, static_cast<Eigen::Index>(n_configs())};
  }

  // Metadata carried into snapshots.
  int start_position = 0;
  CoinState start_coin{};

 private:
  friend FullState step_full(const FullState&, const Coin&);
  int n_;
  int t_;
  CVector amps_;
};

/// Qubit indices (left, right) at vertex n.
std::pair<int, int> vertex_qubits(int vertex, int n_vertices);

/// Product of edge states (x) coin0 (x) |n0>. Throws CapacityError above `cap`.
FullState init_full(const NetworkSpec& spec, const CoinState& coin0, int n0,
                    int cap = kDefaultExactCap);

/// One step: for every (g, c, n) component, mix the coin with `coin` when the
/// two qubits of vertex n in g have odd parity, then shift by the coin.
FullState step_full(const FullState& state, const Coin& coin);
FullState step_full(const FullState& state);

/// Nonzero entries of column `index` of the one-step operator.
struct Transition {
  std::uint64_t target;
  cplx amplitude;
};
int full_step_column(int n_vertices, std::uint64_t index, const Coin& coin,
                     std::array<Transition, 2>& out);

/// Sparse one-step operator on the whole N * 2^{2N+1} dimensional space.
Eigen::SparseMatrix<cplx> full_step_operator(int n_vertices, const Coin& coin);

std::vector<double> position_distribution_full(const FullState& state);

/// Population of every network configuration g.
std::vector<double> config_populations(const FullState& state);

enum class Subsystem { walker, network, vertex_pair };

/// Partial traces. `walker`: 2N x 2N over (c, n). `network`: 4^N x 4^N over g.
/// `vertex_pair`: 4 x 4 over |q_left q_right> of `vertex`.
DensityMatrix reduce_full(const FullState& state, Subsystem keep, int vertex = 0);

/// (p_even, p_odd) of the two qubits at `vertex`.
std::pair<double, double> parity_probs_full(const FullState& state, int vertex);

/// Binary snapshot: magic "QWNS", u32 version, u32 N, i64 t, i32 n0, coin as
/// four f64, u64 count, then count little-endian (re, im) f64 pairs in
/// linear-index order.
void write_snapshot(const FullState& state, const std::filesystem::path& path);
FullState read_snapshot(const std::filesystem::path& path);

}  // namespace qwalknet
