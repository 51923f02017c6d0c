#include "qwalknet/walker.hpp"

#include <cmath>

namespace qwalknet {

WalkState::WalkState(int n_vertices, CVector amplitudes) : n_(n_vertices), amps_(std::move(amplitudes)) {
  if (n_vertices < 1) throw Error("walk needs at least one position");
  if (amps_.size() != 2 * n_vertices) throw Error("walk state must hold 2N amplitudes");
}

WalkState WalkState::localized(int n_vertices, const CoinState& coin, int n0) {
  if (n0 < 0 || n0 >= n_vertices) throw Error("start position out of range");
  CVector a = CVector::Zero(2 * n_vertices);
  a[n0] = coin.c0;
  a[n_vertices + n0] = coin.c1;
  return WalkState(n_vertices, std::move(a));
}

std::vector<double> WalkState::position_probabilities() const {
  std::vector<double> p(static_cast<std::size_t>(n_));
  for (int n = 0; n < n_; ++n) p[static_cast<std::size_t>(n)] = std::norm(amps_[n]) + std::norm(amps_[n_ + n]);
  return p;
}

Coin hadamard_coin() {
  const double s = 1.0 / std::sqrt(2.0);
  Coin h;
  h << s, s, s, -s;
  return h;
}

WalkState shift(const WalkState& state) {
  const int n = state.n_vertices();
  CVector out(2 * n);
  for (int p = 0; p < n; ++p) {
    out[(p + 1) % n] = state.amplitude(0, p);
    out[n + (p - 1 + n) % n] = state.amplitude(1, p);
  }
  return WalkState(n, std::move(out));
}

WalkState conditional_coin_layer(EdgeBasisIndex index, const WalkState& state, const Coin& coin) {
  const int n = state.n_vertices();
  if (index.n_edges() != n) throw Error("basis index and walk size differ");
  CVector out = state.amplitudes();
  for (int p = 0; p < n; ++p) {
    if (vertex_parity(index, p) == Parity::even) continue;
    const cplx a = out[p];
    const cplx b = out[n + p];
    out[p] = coin(0, 0) * a + coin(0, 1) * b;
    out[n + p] = coin(1, 0) * a + coin(1, 1) * b;
  }
  return WalkState(n, std::move(out));
}

ConditionalUnitary build_conditional_unitary(EdgeBasisIndex index, const Coin& coin) {
  const int n = index.n_edges();
  CMatrix u(2 * n, 2 * n);
  for (int col = 0; col < 2 * n; ++col) {
    CVector e = CVector::Zero(2 * n);
    e[col] = 1.0;
    u.col(col) = shift(conditional_coin_layer(index, WalkState(n, std::move(e)), coin)).amplitudes();
  }
  return {std::move(u), index};
}

void step_walk_in_place(std::span<cplx> amps, int n_vertices, std::uint64_t odd_mask,
                        const Coin& coin, std::span<cplx> scratch) {
  const int n = n_vertices;
  const cplx c00 = coin(0, 0), c01 = coin(0, 1), c10 = coin(1, 0), c11 = coin(1, 1);
  for (int p = 0; p < n; ++p) {
    cplx a = amps[p];
    cplx b = amps[n + p];
    if ((odd_mask >> p) & 1u) {
      const cplx na = c00 * a + c01 * b;
      b = c10 * a + c11 * b;
      a = na;
    }
    scratch[(p + 1) % n] = a;
    scratch[n + (p - 1 + n) % n] = b;
  }
  std::copy(scratch.begin(), scratch.begin() + 2 * n, amps.begin());
}

CMatrix dcqw_ring_step(int n_vertices) {
  // all-ones mask: Hadamard at every vertex
  const std::uint64_t mask = (std::uint64_t{1} << n_vertices) - 1;
  CMatrix u(2 * n_vertices, 2 * n_vertices);
  std::vector<cplx> scratch(static_cast<std::size_t>(2 * n_vertices));
  for (int col = 0; col < 2 * n_vertices; ++col) {
    CVector e = CVector::Zero(2 * n_vertices);
    e[col] = 1.0;
    step_walk_in_place({e.data(), static_cast<std::size_t>(e.size())}, n_vertices, mask,
                       hadamard_coin(), scratch);
    u.col(col) = e;
  }
  return u;
}

int position_label(int n, int n0, int n_vertices) {
  const int offset = ((n - n0) % n_vertices + n_vertices) % n_vertices;
  return offset <= n_vertices / 2 ? offset : offset - n_vertices;
}

DcqwRun dcqw_run(Geometry geometry, int n_vertices, const CoinState& coin, int n0, int steps) {
  if (steps < 0) throw Error("step count must be non-negative");
  const Coin h = hadamard_coin();
  DcqwRun run{geometry, {}, {}, {}};

  if (geometry == Geometry::ring) {
    const int n = n_vertices;
    WalkState w = WalkState::localized(n, coin, n0);
    for (int p = 0; p < n; ++p) run.labels.push_back(position_label(p, n0, n));
    run.distribution.push_back(w.position_probabilities());
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    std::vector<cplx> scratch(static_cast<std::size_t>(2 * n));
    for (int t = 0; t < steps; ++t) {
      step_walk_in_place({w.amplitudes().data(), static_cast<std::size_t>(2 * n)}, n, mask, h, scratch);
      run.distribution.push_back(w.position_probabilities());
    }
    run.final_state = w.amplitudes();
    return run;
  }

  // Line: width 2t+1 centred on n0, indices 0..width-1 map to n0 - t .. n0 + t.
  const int width = 2 * steps + 1;
  for (int k = 0; k < width; ++k) run.labels.push_back(n0 - steps + k);
  CVector a = CVector::Zero(2 * width);
  a[steps] = coin.c0;
  a[width + steps] = coin.c1;
  auto probabilities = [&](const CVector& v) {
    std::vector<double> p(static_cast<std::size_t>(width));
    for (int k = 0; k < width; ++k) p[static_cast<std::size_t>(k)] = std::norm(v[k]) + std::norm(v[width + k]);
    return p;
  };
  run.distribution.push_back(probabilities(a));
  CVector next(2 * width);
  for (int t = 0; t < steps; ++t) {
    next.setZero();
    for (int k = 0; k < width; ++k) {
      const cplx c0 = h(0, 0) * a[k] + h(0, 1) * a[width + k];
      const cplx c1 = h(1, 0) * a[k] + h(1, 1) * a[width + k];
      if (c0 != cplx{} && k + 1 >= width) throw Error("line walk reached the right boundary");
      if (c1 != cplx{} && k - 1 < 0) throw Error("line walk reached the left boundary");
      if (k + 1 < width) next[k + 1] += c0;
      if (k - 1 >= 0) next[width + k - 1] += c1;
    }
    a.swap(next);
    run.distribution.push_back(probabilities(a));
  }
  run.final_state = a;
  return run;
}

}  // namespace qwalknet
