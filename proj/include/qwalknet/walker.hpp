#pragma once

#include <span>
#include <vector>

#include "qwalknet/common.hpp"
#include "qwalknet/network.hpp"

namespace qwalknet {

/// Coin (x) position amplitudes of one walk on an N-cycle, flat index c*N + n.
class WalkState {
 public:
  WalkState(int n_vertices, CVector amplitudes);
  static WalkState localized(int n_vertices, const CoinState& coin, int n0);

  int n_vertices() const { return n_; }
  const CVector& amplitudes() const { return amps_; }
  CVector& amplitudes() { return amps_; }
  cplx amplitude(int coin, int position) const { return amps_[coin * n_ + position]; }
  double norm() const { return amps_.norm(); }
  std::vector<double> position_probabilities() const;

 private:
  int n_;
  CVector amps_;
};

Coin hadamard_coin();

/// Coin-0 amplitude moves n -> n+1, coin-1 amplitude moves n -> n-1 (mod N).
WalkState shift(const WalkState& state);

/// Applies `coin` at every position whose vertex has odd parity under `index`,
/// identity elsewhere.
WalkState conditional_coin_layer(EdgeBasisIndex index, const WalkState& state,
                                 const Coin& coin = hadamard_coin());

struct ConditionalUnitary {
  CMatrix matrix;
  EdgeBasisIndex source;
};

/// shift o conditional_coin_layer(index) as a 2N x 2N matrix.
ConditionalUnitary build_conditional_unitary(EdgeBasisIndex index,
                                             const Coin& coin = hadamard_coin());

/// One in-place step of a conditional walk. `odd_mask` bit n selects the coin
/// at position n; `scratch` must hold 2N values.
void step_walk_in_place(std::span<cplx> amps, int n_vertices, std::uint64_t odd_mask,
                        const Coin& coin, std::span<cplx> scratch);

/// Translation-invariant Hadamard walk step on the N-cycle.
CMatrix dcqw_ring_step(int n_vertices);

/// Symmetric label of internal position n when the walk starts at n0:
/// offsets in [-floor(N/2), floor(N/2)] (even N keeps +N/2).
int position_label(int n, int n0, int n_vertices);

enum class Geometry { line, ring };

struct DcqwRun {
  Geometry geometry;
  std::vector<int> labels;                       // one per position column
  std::vector<std::vector<double>> distribution; // [t][position], t = 0..steps
  CVector final_state;                           // c * labels.size() + position
};

/// Canonical Hadamard walk. Line mode allocates positions [-t, t] around n0,
/// so the walker never reaches a boundary; ring mode uses `n_vertices`.
DcqwRun dcqw_run(Geometry geometry, int n_vertices, const CoinState& coin, int n0, int steps);

}  // namespace qwalknet
