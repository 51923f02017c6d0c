#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qwalknet/common.hpp"
#include "qwalknet/network.hpp"
#include "qwalknet/observables.hpp"

namespace qwalknet {

/// Eigenphases closer than this are treated as one degenerate cluster.
inline constexpr double kPhaseTolerance = 1e-9;

/// Eigenphases in (-pi, pi] and orthonormal eigenvectors of a unitary.
///
/// Computed from the complex Schur form: for a normal matrix the triangular
/// factor is diagonal, so the Schur vectors are an orthonormal eigenbasis even
/// inside degenerate eigenspaces.
struct UnitaryEigensystem {
  Eigen::VectorXd phases;
  CMatrix vectors;
};

UnitaryEigensystem unitary_eigensystem(const CMatrix& u);

/// Groups eigen-indices whose phases lie within `tolerance` (chained, with
/// wrap-around at +-pi).
std::vector<std::vector<Eigen::Index>> cluster_phases(const Eigen::VectorXd& phases,
                                                      double tolerance = kPhaseTolerance);

/// Long-time average of |<k|psi(t)>|^2 for every basis index k:
/// sum over clusters of |(P_theta psi0)_k|^2.
Eigen::VectorXd time_averaged_populations(const UnitaryEigensystem& eig,
                                          const std::vector<std::vector<Eigen::Index>>& clusters,
                                          const CVector& psi0);

struct DegeneracyReport {
  std::int64_t clusters = 0;
  std::map<int, std::int64_t> multiplicities;  // cluster size -> count

  void add(const std::vector<std::vector<Eigen::Index>>& groups);
  nlohmann::json to_json() const;
};

enum class StationaryMethod { full, conditional };

struct StationaryResult {
  Distribution pi;
  StationaryMethod method;
  DegeneracyReport degeneracy;
};

struct FullStationaryOptions {
  int cap = 6;
  /// Diagonalize the whole operator as one dense matrix instead of splitting it
  /// into invariant blocks found from its sparsity graph. Limited to small dims.
  bool dense = false;
};

/// Diagonalizes the full one-step operator on network (x) coin (x) position.
StationaryResult stationary_full(const NetworkSpec& spec, const CoinState& coin0, int n0,
                                 const FullStationaryOptions& options = {});

/// Per-walk stationary distributions pi^i for every conditional walk of an
/// N-ring. They do not depend on the edge parameters, so one table serves any
/// network of that size.
class WalkStationaryTable {
 public:
  static constexpr int kMaxVertices = 22;

  WalkStationaryTable(int n_vertices, const CoinState& coin0, int n0);

  int n_vertices() const { return n_; }
  int start_position() const { return n0_; }
  /// pi^i_n, row i.
  const Eigen::MatrixXd& per_walk() const { return table_; }
  /// Eigenphase clusters of one walk per rotation class.
  const DegeneracyReport& degeneracy() const { return report_; }

  /// sum_i f_i^2 pi^i for the given network.
  StationaryResult combine(const NetworkSpec& spec) const;

 private:
  int n_;
  int n0_;
  Eigen::MatrixXd table_;
  DegeneracyReport report_;
};

StationaryResult stationary_conditional(const NetworkSpec& spec, const CoinState& coin0, int n0);

/// Running-average distance D(t) = TV(pbar(t), pi) for t = 1..horizon, where
/// pbar(t) averages p(1..t).
struct ApproachResult {
  std::vector<double> distance;  // distance[t-1] = D(t)
  std::optional<int> t_pi;       // nullopt: never settled within the horizon
  int window = 0;
  Distribution pi;

  double distance_at(int t) const { return distance.at(static_cast<std::size_t>(t - 1)); }
  /// Standard deviation of D(t) over [from, horizon].
  double fluctuation_after(int from) const;
};

/// t_pi: smallest t with D(t') <= epsilon for every t' in [t, t + window].
/// `window` defaults to N.
ApproachResult time_to_stationary(const NetworkSpec& spec, const CoinState& coin0, int n0, double epsilon,
                                  int horizon, std::optional<int> window = std::nullopt,
                                  const Distribution* pi = nullptr);

/// Settling time of an already computed distance series.
std::optional<int> settling_time(const std::vector<double>& distance, double epsilon, int window);

/// Times t in [1, t_max] with ||U^t - I|| <= epsilon (spectral norm, from the
/// eigenphases: max_l |exp(i theta_l t) - 1|).
std::vector<int> quasi_period_scan(const CMatrix& u, int t_max, double epsilon);

struct MomentumCoupling {
  double off_block_norm;  // Frobenius norm of entries coupling different k sectors
  double total_norm;      // Frobenius norm of the whole operator
  double normalized() const { return off_block_norm / total_norm; }
};

/// Transforms a 2N x 2N coin (x) position operator to the coin (x) momentum
/// basis |k> = N^{-1/2} sum_j w^{jk} |j>, w = exp(2 pi i/N), and measures the
/// part that is not block-diagonal in k.
MomentumCoupling momentum_coupling(const CMatrix& step, int n_vertices);
MomentumCoupling momentum_coupling(EdgeBasisIndex index);

}  // namespace qwalknet
