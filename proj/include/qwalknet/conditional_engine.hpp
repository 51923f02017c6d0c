#pragma once

#include <cstdint>
#include <vector>

#include "qwalknet/common.hpp"
#include "qwalknet/network.hpp"
#include "qwalknet/walker.hpp"

namespace qwalknet {

/// The walk as sum_i f_i |G_i> (x) |W_i(t)>: 2^N independent conditional walks.
///
/// Walk amplitudes are stored column-wise, column i holding |W_i(t)> in the
/// c * N + n layout of WalkState.
class ConditionalEnsemble {
 public:
  ConditionalEnsemble(NetworkSpec spec, std::vector<double> weights, CMatrix walks, Coin coin, int time);

  const NetworkSpec& spec() const { return spec_; }
  int n_vertices() const { return spec_.n_vertices(); }
  int time() const { return t_; }
  const std::vector<double>& weights() const { return weights_; }
  const CMatrix& walks() const { return walks_; }
  const Coin& coin() const { return coin_; }
  std::uint64_t n_walks() const { return static_cast<std::uint64_t>(walks_.cols()); }
  WalkState walk(std::uint64_t i) const;

  /// Advances every walk by its own conditional unitary, in place.
  void advance();

 private:
  NetworkSpec spec_;
  std::vector<double> weights_;
  CMatrix walks_;
  Coin coin_;
  int t_;
  std::vector<std::uint64_t> odd_masks_;
};

struct EnsembleOptions {
  /// Coin applied at odd-parity vertices. Swapping it is a test hook.
  Coin coin = hadamard_coin();
  /// Drop walks with f_i^2 below this value and renormalize. Zero keeps all.
  double weight_cutoff = 0.0;
};

ConditionalEnsemble init_ensemble(const NetworkSpec& spec, const CoinState& coin0, int n0,
                                  const EnsembleOptions& options = {});

ConditionalEnsemble step_ensemble(const ConditionalEnsemble& ensemble);

/// p_n = sum_i f_i^2 (|a^i_n|^2 + |b^i_n|^2).
std::vector<double> ensemble_distribution(const ConditionalEnsemble& ensemble);

/// Overlaps G(j, i) = <W_j|W_i>.
CMatrix gram(const ConditionalEnsemble& ensemble);

/// rho_W = sum_i f_i^2 |W_i><W_i|, 2N x 2N.
DensityMatrix walker_density(const ConditionalEnsemble& ensemble);

/// rho_G(i, j) = f_i f_j <W_j|W_i> on the 2^N parity-even basis.
DensityMatrix network_density(const ConditionalEnsemble& ensemble);

/// p(t) in internal position order for t = 1..steps; element t-1 is p(t).
std::vector<std::vector<double>> distribution_series(const NetworkSpec& spec, const CoinState& coin0, int n0,
                                                     int steps);

}  // namespace qwalknet
