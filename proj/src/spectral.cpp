#include "qwalknet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>

#include "qwalknet/conditional_engine.hpp"
#include "qwalknet/exact_engine.hpp"
#include "qwalknet/walker.hpp"

namespace qwalknet {

UnitaryEigensystem unitary_eigensystem(const CMatrix& u) {
  if (u.rows() != u.cols()) throw Error("unitary must be square");
  Eigen::ComplexSchur<CMatrix> schur(u, true);
  if (schur.info() != Eigen::Success) throw Error("Schur decomposition did not converge");
  const CMatrix& t = schur.matrixT();
  const Eigen::Index d = t.rows();
  double off = 0.0;
  for (Eigen::Index j = 1; j < d; ++j) off = std::max(off, t.col(j).head(j).cwiseAbs().maxCoeff());
  if (off > 1e-8) throw Error("matrix is not normal; Schur factor off-diagonal " + std::to_string(off));
  UnitaryEigensystem eig{Eigen::VectorXd(d), schur.matrixU()};
  for (Eigen::Index k = 0; k < d; ++k) {
    const cplx lambda = t(k, k);
    if (std::abs(std::abs(lambda) - 1.0) > 1e-8) throw Error("eigenvalue off the unit circle");
    eig.phases[k] = std::arg(lambda);
  }
  return eig;
}

std::vector<std::vector<Eigen::Index>> cluster_phases(const Eigen::VectorXd& phases, double tolerance) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(phases.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return phases[a] < phases[b]; });
  std::vector<std::vector<Eigen::Index>> groups;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k == 0 || phases[order[k]] - phases[order[k - 1]] >= tolerance) groups.emplace_back();
    groups.back().push_back(order[k]);
  }
  // -pi and +pi are the same point on the circle
  if (groups.size() > 1 &&
      phases[groups.front().front()] + 2.0 * std::numbers::pi - phases[groups.back().back()] < tolerance) {
    groups.front().insert(groups.front().end(), groups.back().begin(), groups.back().end());
    groups.pop_back();
  }
  return groups;
}

Eigen::VectorXd time_averaged_populations(const UnitaryEigensystem& eig,
                                          const std::vector<std::vector<Eigen::Index>>& clusters,
                                          const CVector& psi0) {
  const CVector coeff = eig.vectors.adjoint() * psi0;
  Eigen::VectorXd pop = Eigen::VectorXd::Zero(psi0.size());
  CVector projected(psi0.size());
  for (const auto& cluster : clusters) {
    projected.setZero();
    for (Eigen::Index l : cluster) projected += coeff[l] * eig.vectors.col(l);
    pop += projected.cwiseAbs2();
  }
  return pop;
}

void DegeneracyReport::add(const std::vector<std::vector<Eigen::Index>>& groups) {
  clusters += static_cast<std::int64_t>(groups.size());
  for (const auto& g : groups) ++multiplicities[static_cast<int>(g.size())];
}

nlohmann::json DegeneracyReport::to_json() const {
  nlohmann::json m = nlohmann::json::object();
  for (const auto& [size, count] : multiplicities) m[std::to_string(size)] = count;
  return {{"clusters", clusters}, {"multiplicities", m}};
}

namespace {

// Disjoint-set forest over basis indices.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

StationaryResult stationary_full(const NetworkSpec& spec, const CoinState& coin0, int n0,
                                 const FullStationaryOptions& options) {
  const int n = spec.n_vertices();
  if (n > options.cap) {
    throw CapacityError("dimension cap: full-operator stationary distribution limited to N <= " +
                        std::to_string(options.cap));
  }
  const FullState psi0 = init_full(spec, coin0, n0, options.cap);
  const Eigen::SparseMatrix<cplx> u = full_step_operator(n, hadamard_coin());
  const Eigen::Index dim = u.rows();

  StationaryResult result{make_distribution(std::vector<double>(static_cast<std::size_t>(n), 0.0), n0),
                          StationaryMethod::full,
                          {}};
  auto accumulate = [&](const Eigen::VectorXd& pop, const std::vector<Eigen::Index>& indices) {
    for (std::size_t k = 0; k < indices.size(); ++k) {
      result.pi.probs[static_cast<std::size_t>(indices[k] % n)] += pop[static_cast<Eigen::Index>(k)];
    }
  };

  if (options.dense) {
    if (dim > 2048) throw CapacityError("dense full diagonalization limited to dimension 2048");
    const UnitaryEigensystem eig = unitary_eigensystem(CMatrix(u));
    const auto clusters = cluster_phases(eig.phases);
    result.degeneracy.add(clusters);
    std::vector<Eigen::Index> all(static_cast<std::size_t>(dim));
    std::iota(all.begin(), all.end(), Eigen::Index{0});
    accumulate(time_averaged_populations(eig, clusters, psi0.amplitudes()), all);
    return result;
  }

  // Invariant blocks: connected components of the operator's sparsity graph.
  UnionFind sets(static_cast<std::size_t>(dim));
  for (Eigen::Index col = 0; col < u.outerSize(); ++col) {
    for (Eigen::SparseMatrix<cplx>::InnerIterator it(u, col); it; ++it) {
      sets.unite(static_cast<std::size_t>(it.row()), static_cast<std::size_t>(col));
    }
  }
  std::map<std::size_t, std::vector<Eigen::Index>> components;
  for (Eigen::Index k = 0; k < dim; ++k) components[sets.find(static_cast<std::size_t>(k))].push_back(k);

  for (const auto& [root, indices] : components) {
    const auto m = static_cast<Eigen::Index>(indices.size());
    CVector local(m);
    for (Eigen::Index k = 0; k < m; ++k) local[k] = psi0.amplitudes()[indices[static_cast<std::size_t>(k)]];
    if (local.squaredNorm() == 0.0) continue;
    std::map<Eigen::Index, Eigen::Index> position;
    for (Eigen::Index k = 0; k < m; ++k) position[indices[static_cast<std::size_t>(k)]] = k;
    CMatrix block = CMatrix::Zero(m, m);
    for (Eigen::Index k = 0; k < m; ++k) {
      for (Eigen::SparseMatrix<cplx>::InnerIterator it(u, indices[static_cast<std::size_t>(k)]); it; ++it) {
        block(position.at(it.row()), k) = it.value();
      }
    }
    const UnitaryEigensystem eig = unitary_eigensystem(block);
    const auto clusters = cluster_phases(eig.phases);
    result.degeneracy.add(clusters);
    accumulate(time_averaged_populations(eig, clusters, local), indices);
  }
  return result;
}

namespace {

std::uint64_t rotate_bits(std::uint64_t v, int r, int n) {
  if (r == 0) return v;
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  return ((v << r) | (v >> (n - r))) & all;
}

}  // namespace

WalkStationaryTable::WalkStationaryTable(int n_vertices, const CoinState& coin0, int n0)
    : n_(n_vertices), n0_(n0) {
  if (n_vertices < NetworkSpec::kMinVertices || n_vertices > kMaxVertices) {
    throw CapacityError("per-walk stationary table supports 3 <= N <= " + std::to_string(kMaxVertices));
  }
  if (n0 < 0 || n0 >= n_vertices) throw Error("start position out of range");
  const int n = n_vertices;
  const std::uint64_t walks = std::uint64_t{1} << n;
  table_.resize(static_cast<Eigen::Index>(walks), n);

  // Rotating the configuration by r translates its walk by r sites, so one
  // eigensystem per rotation class serves every member with a shifted start.
  std::vector<std::uint64_t> representatives;
  for (std::uint64_t i = 0; i < walks; ++i) {
    bool smallest = true;
    for (int r = 1; r < n && smallest; ++r) smallest = rotate_bits(i, r, n) >= i;
    if (smallest) representatives.push_back(i);
  }
  std::vector<DegeneracyReport> reports(representatives.size());

  tbb::parallel_for(tbb::blocked_range<std::size_t>(0, representatives.size(), 4),
                    [&](const tbb::blocked_range<std::size_t>& range) {
    for (std::size_t k = range.begin(); k != range.end(); ++k) {
      const std::uint64_t rep = representatives[k];
      const UnitaryEigensystem eig = unitary_eigensystem(build_conditional_unitary(EdgeBasisIndex(rep, n)).matrix);
      const auto clusters = cluster_phases(eig.phases);
      reports[k].add(clusters);
      for (int r = 0; r < n; ++r) {
        const std::uint64_t member = rotate_bits(rep, r, n);
        if (r > 0 && member == rep) break;
        const int start = ((n0 - r) % n + n) % n;
        const CVector psi0 = WalkState::localized(n, coin0, start).amplitudes();
        const Eigen::VectorXd pop = time_averaged_populations(eig, clusters, psi0);
        for (int p = 0; p < n; ++p) {
          const int q = ((p - r) % n + n) % n;
          table_(static_cast<Eigen::Index>(member), p) = pop[q] + pop[n + q];
        }
      }
    }
  });
  for (const auto& r : reports) {
    report_.clusters += r.clusters;
    for (const auto& [size, count] : r.multiplicities) report_.multiplicities[size] += count;
  }
}

StationaryResult WalkStationaryTable::combine(const NetworkSpec& spec) const {
  if (spec.n_vertices() != n_) throw Error("network size does not match the stationary table");
  const std::vector<double> f = weights(spec);
  std::vector<double> pi(static_cast<std::size_t>(n_), 0.0);
  for (Eigen::Index i = 0; i < table_.rows(); ++i) {
    const double f2 = f[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(i)];
    if (f2 == 0.0) continue;
    for (int p = 0; p < n_; ++p) pi[static_cast<std::size_t>(p)] += f2 * table_(i, p);
  }
  return {make_distribution(std::move(pi), n0_), StationaryMethod::conditional, report_};
}

StationaryResult stationary_conditional(const NetworkSpec& spec, const CoinState& coin0, int n0) {
  return WalkStationaryTable(spec.n_vertices(), coin0, n0).combine(spec);
}

double ApproachResult::fluctuation_after(int from) const {
  const auto begin = static_cast<std::size_t>(std::max(from, 1) - 1);
  if (begin >= distance.size()) return 0.0;
  const auto count = static_cast<double>(distance.size() - begin);
  double mean = 0.0;
  for (std::size_t k = begin; k < distance.size(); ++k) mean += distance[k];
  mean /= count;
  double var = 0.0;
  for (std::size_t k = begin; k < distance.size(); ++k) var += (distance[k] - mean) * (distance[k] - mean);
  return std::sqrt(var / count);
}

std::optional<int> settling_time(const std::vector<double>& distance, double epsilon, int window) {
  if (epsilon <= 0.0) throw Error("epsilon must be positive");
  const int horizon = static_cast<int>(distance.size());
  // Scan backwards tracking the first exceedance after each t.
  int next_bad = horizon + 1;
  std::optional<int> best;
  for (int t = horizon; t >= 1; --t) {
    if (distance[static_cast<std::size_t>(t - 1)] > epsilon) next_bad = t;
    if (t + window <= horizon && next_bad > t + window) best = t;
  }
  return best;
}

ApproachResult time_to_stationary(const NetworkSpec& spec, const CoinState& coin0, int n0, double epsilon,
                                  int horizon, std::optional<int> window, const Distribution* pi) {
  if (epsilon <= 0.0) throw Error("epsilon must be positive");
  if (horizon < 1) throw Error("horizon must be positive");
  ApproachResult out;
  out.window = window.value_or(spec.n_vertices());
  out.pi = pi ? *pi : stationary_conditional(spec, coin0, n0).pi;

  ConditionalEnsemble ens = init_ensemble(spec, coin0, n0);
  RunningAverage avg(out.pi.labels);
  out.distance.reserve(static_cast<std::size_t>(horizon));
  for (int t = 1; t <= horizon; ++t) {
    ens.advance();
    avg.add(ensemble_distribution(ens));
    out.distance.push_back(tv_distance(avg.current(), out.pi));
  }
  out.t_pi = settling_time(out.distance, epsilon, out.window);
  return out;
}

std::vector<int> quasi_period_scan(const CMatrix& u, int t_max, double epsilon) {
  const UnitaryEigensystem eig = unitary_eigensystem(u);
  std::vector<int> hits;
  for (int t = 1; t <= t_max; ++t) {
    double worst = 0.0;
    for (double theta : eig.phases) {
      worst = std::max(worst, 2.0 * std::abs(std::sin(theta * t / 2.0)));
      if (worst > epsilon) break;
    }
    if (worst <= epsilon) hits.push_back(t);
  }
  return hits;
}

MomentumCoupling momentum_coupling(const CMatrix& step, int n_vertices) {
  const int n = n_vertices;
  if (step.rows() != 2 * n || step.cols() != 2 * n) throw Error("operator must be 2N x 2N");
  CMatrix fourier = CMatrix::Zero(2 * n, 2 * n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (int c = 0; c < 2; ++c) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        fourier(c * n + j, c * n + k) = norm * std::polar(1.0, 2.0 * std::numbers::pi * j * k / n);
      }
    }
  }
  const CMatrix in_momentum = fourier.adjoint() * step * fourier;
  double off = 0.0;
  for (int col = 0; col < 2 * n; ++col) {
    for (int row = 0; row < 2 * n; ++row) {
      if (row % n != col % n) off += std::norm(in_momentum(row, col));
    }
  }
  return {std::sqrt(off), in_momentum.norm()};
}

MomentumCoupling momentum_coupling(EdgeBasisIndex index) {
  return momentum_coupling(build_conditional_unitary(index).matrix, index.n_edges());
}

}  // namespace qwalknet
