#include "qwalknet/exact_engine.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>

namespace qwalknet {
namespace {

bool qubit(std::uint64_t g, int q) { return ((g >> q) & 1u) != 0; }

bool odd_at(std::uint64_t g, int vertex, int n_vertices) {
  const auto [left, right] = vertex_qubits(vertex, n_vertices);
  return qubit(g, left) != qubit(g, right);
}

std::string config_label(std::uint64_t g, int n_qubits) {
  std::string s(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q) {
    if (qubit(g, q)) s[static_cast<std::size_t>(n_qubits - 1 - q)] = '1';
  }
  return s;
}

}  // namespace

FullState::FullState(int n_vertices, CVector amplitudes, int time)
    : n_(n_vertices), t_(time), amps_(std::move(amplitudes)) {
  if (n_vertices < NetworkSpec::kMinVertices) throw Error("network needs at least 3 vertices");
  const auto expected = static_cast<Eigen::Index>((std::uint64_t{1} << (2 * n_vertices)) * 2 * n_vertices);
  if (amps_.size() != expected) throw Error("full state has the wrong dimension");
}

std::pair<int, int> vertex_qubits(int vertex, int n_vertices) {
  const int left_edge = (vertex - 1 + n_vertices) % n_vertices;
  return {2 * left_edge + 1, 2 * vertex};
}

FullState init_full(const NetworkSpec& spec, const CoinState& coin0, int n0, int cap) {
  const int n = spec.n_vertices();
  if (n > cap) {
    throw CapacityError("dimension cap: exact engine limited to N <= " + std::to_string(cap) +
                        " (requested N = " + std::to_string(n) +
                        "); use the conditional engine");
  }
  if (n0 < 0 || n0 >= n) throw Error("start position out of range");
  if (std::abs(coin0.norm() - 1.0) > 1e-9) throw Error("initial coin state is not normalized");

  const std::uint64_t configs = std::uint64_t{1} << (2 * n);
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(configs * 2 * n));
  for (std::uint64_t g = 0; g < configs; ++g) {
    double amp = 1.0;
    for (int e = 0; e < n && amp != 0.0; ++e) {
      const bool a = qubit(g, 2 * e);
      const bool b = qubit(g, 2 * e + 1);
      if (a != b) {
        amp = 0.0;
      } else {
        amp *= a ? std::sqrt(1.0 - spec.alpha(e)) : std::sqrt(spec.alpha(e));
      }
    }
    if (amp == 0.0) continue;
    const auto base = static_cast<Eigen::Index>(g * 2 * n);
    amps[base + n0] = amp * coin0.c0;
    amps[base + n + n0] = amp * coin0.c1;
  }
  FullState s(n, std::move(amps), 0);
  s.start_position = n0;
  s.start_coin = coin0;
  return s;
}

FullState step_full(const FullState& state, const Coin& coin) {
  const int n = state.n_vertices();
  const Eigen::Index block = 2 * n;
  CVector out(state.amps_.size());
  const cplx* in = state.amps_.data();
  cplx* dst = out.data();
  tbb::parallel_for(tbb::blocked_range<std::uint64_t>(0, state.n_configs(), 64),
                    [&](const tbb::blocked_range<std::uint64_t>& r) {
                      for (std::uint64_t g = r.begin(); g != r.end(); ++g) {
                        const cplx* src = in + g * block;
                        cplx* o = dst + g * block;
                        for (int p = 0; p < n; ++p) {
                          cplx a = src[p];
                          cplx b = src[n + p];
                          if (odd_at(g, p, n)) {
                            const cplx na = coin(0, 0) * a + coin(0, 1) * b;
                            b = coin(1, 0) * a + coin(1, 1) * b;
                            a = na;
                          }
                          o[(p + 1) % n] = a;
                          o[n + (p - 1 + n) % n] = b;
                        }
                      }
                    });
  FullState next(n, std::move(out), state.t_ + 1);
  next.start_position = state.start_position;
  next.start_coin = state.start_coin;
  return next;
}

FullState step_full(const FullState& state) { return step_full(state, hadamard_coin()); }

int full_step_column(int n_vertices, std::uint64_t index, const Coin& coin, std::array<Transition, 2>& out) {
  const int n = n_vertices;
  const std::uint64_t block = 2 * static_cast<std::uint64_t>(n);
  const std::uint64_t g = index / block;
  const int c = static_cast<int>((index % block) / static_cast<std::uint64_t>(n));
  const int p = static_cast<int>(index % static_cast<std::uint64_t>(n));
  const std::uint64_t base = g * block;
  const std::uint64_t right = base + static_cast<std::uint64_t>((p + 1) % n);
  const std::uint64_t left = base + static_cast<std::uint64_t>(n + (p - 1 + n) % n);
  if (!odd_at(g, p, n)) {
    out[0] = {c == 0 ? right : left, cplx(1.0, 0.0)};
    return 1;
  }
  // Column c of the coin: amplitude coin(0,c) to coin 0 (moves right), coin(1,c) to coin 1.
  int k = 0;
  if (coin(0, c) != cplx{}) out[static_cast<std::size_t>(k++)] = {right, coin(0, c)};
  if (coin(1, c) != cplx{}) out[static_cast<std::size_t>(k++)] = {left, coin(1, c)};
  return k;
}

Eigen::SparseMatrix<cplx> full_step_operator(int n_vertices, const Coin& coin) {
  const std::uint64_t dim = (std::uint64_t{1} << (2 * n_vertices)) * 2 * static_cast<std::uint64_t>(n_vertices);
  std::vector<Eigen::Triplet<cplx>> triplets;
  triplets.reserve(static_cast<std::size_t>(dim * 2));
  std::array<Transition, 2> col{};
  for (std::uint64_t j = 0; j < dim; ++j) {
    const int k = full_step_column(n_vertices, j, coin, col);
    for (int m = 0; m < k; ++m) {
      triplets.emplace_back(static_cast<int>(col[static_cast<std::size_t>(m)].target), static_cast<int>(j),
                            col[static_cast<std::size_t>(m)].amplitude);
    }
  }
  Eigen::SparseMatrix<cplx> u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  u.setFromTriplets(triplets.begin(), triplets.end());
  return u;
}

std::vector<double> position_distribution_full(const FullState& state) {
  const int n = state.n_vertices();
  std::vector<double> p(static_cast<std::size_t>(n), 0.0);
  const auto m = state.by_config();
  for (Eigen::Index g = 0; g < m.cols(); ++g) {
    for (int pos = 0; pos < n; ++pos) {
      p[static_cast<std::size_t>(pos)] += std::norm(m(pos, g)) + std::norm(m(n + pos, g));
    }
  }
  return p;
}

std::vector<double> config_populations(const FullState& state) {
  const auto m = state.by_config();
  std::vector<double> pop(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index g = 0; g < m.cols(); ++g) pop[static_cast<std::size_t>(g)] = m.col(g).squaredNorm();
  return pop;
}

DensityMatrix reduce_full(const FullState& state, Subsystem keep, int vertex) {
  const int n = state.n_vertices();
  const auto m = state.by_config();
  DensityMatrix rho;
  switch (keep) {
    case Subsystem::walker: {
      rho.entries = m * m.adjoint();
      for (int c = 0; c < 2; ++c) {
        for (int p = 0; p < n; ++p) rho.basis_labels.push_back("c" + std::to_string(c) + ",n" + std::to_string(p));
      }
      break;
    }
    case Subsystem::network: {
      rho.entries = m.transpose() * m.conjugate();
      for (std::uint64_t g = 0; g < state.n_configs(); ++g) rho.basis_labels.push_back(config_label(g, 2 * n));
      break;
    }
    case Subsystem::vertex_pair: {
      if (vertex < 0 || vertex >= n) throw Error("vertex out of range");
      const auto [ql, qr] = vertex_qubits(vertex, n);
      const std::uint64_t pair_mask = (std::uint64_t{1} << ql) | (std::uint64_t{1} << qr);
      auto with_pair = [&](std::uint64_t rest, int ab) {
        std::uint64_t g = rest;
        if (ab & 2) g |= std::uint64_t{1} << ql;
        if (ab & 1) g |= std::uint64_t{1} << qr;
        return static_cast<Eigen::Index>(g);
      };
      rho.entries = CMatrix::Zero(4, 4);
      for (std::uint64_t rest = 0; rest < state.n_configs(); ++rest) {
        if (rest & pair_mask) continue;
        for (int ab = 0; ab < 4; ++ab) {
          for (int cd = 0; cd < 4; ++cd) {
            rho.entries(ab, cd) += m.col(with_pair(rest, cd)).dot(m.col(with_pair(rest, ab)));
          }
        }
      }
      rho.basis_labels = {"00", "01", "10", "11"};
      break;
    }
  }
  return rho;
}

std::pair<double, double> parity_probs_full(const FullState& state, int vertex) {
  if (vertex < 0 || vertex >= state.n_vertices()) throw Error("vertex out of range");
  const auto m = state.by_config();
  double even = 0.0, odd = 0.0;
  for (Eigen::Index g = 0; g < m.cols(); ++g) {
    (odd_at(static_cast<std::uint64_t>(g), vertex, state.n_vertices()) ? odd : even) += m.col(g).squaredNorm();
  }
  return {even, odd};
}

namespace {

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes a little-endian host");

constexpr char kMagic[4] = {'Q', 'W', 'N', 'S'};
constexpr std::uint32_t kSnapshotVersion = 1;

template <typename T>
void put(std::ofstream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw Error("truncated snapshot");
  return v;
}

}  // namespace

void write_snapshot(const FullState& state, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  os.write(kMagic, 4);
  put(os, kSnapshotVersion);
  put(os, static_cast<std::uint32_t>(state.n_vertices()));
  put(os, static_cast<std::int64_t>(state.time()));
  put(os, static_cast<std::int32_t>(state.start_position));
  for (double v : {state.start_coin.c0.real(), state.start_coin.c0.imag(), state.start_coin.c1.real(),
                   state.start_coin.c1.imag()}) {
    put(os, v);
  }
  put(os, static_cast<std::uint64_t>(state.amplitudes().size()));
  os.write(reinterpret_cast<const char*>(state.amplitudes().data()),
           static_cast<std::streamsize>(state.amplitudes().size() * sizeof(cplx)));
  if (!os) throw Error("failed writing snapshot " + path.string());
}

FullState read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open snapshot " + path.string());
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) throw Error("not a qwalknet snapshot: " + path.string());
  if (get<std::uint32_t>(is) != kSnapshotVersion) throw Error("unsupported snapshot version");
  const auto n = static_cast<int>(get<std::uint32_t>(is));
  const auto t = get<std::int64_t>(is);
  const auto n0 = get<std::int32_t>(is);
  double c[4];
  for (double& v : c) v = get<double>(is);
  const auto count = get<std::uint64_t>(is);
  if (n < NetworkSpec::kMinVertices || n > kDefaultExactCap ||
      count != (std::uint64_t{1} << (2 * n)) * 2 * static_cast<std::uint64_t>(n)) {
    throw Error("snapshot header is inconsistent");
  }
  CVector amps(static_cast<Eigen::Index>(count));
  is.read(reinterpret_cast<char*>(amps.data()), static_cast<std::streamsize>(count * sizeof(cplx)));
  if (!is) throw Error("truncated snapshot");
  FullState s(n, std::move(amps), static_cast<int>(t));
  s.start_position = n0;
  s.start_coin = {cplx(c[0], c[1]), cplx(c[2], c[3])};
  return s;
}

}  // namespace qwalknet
