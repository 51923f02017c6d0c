#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "qwalknet/spectral.hpp"
#include "qwalknet/walker.hpp"

using namespace qwalknet;

TEST_SUITE("spectral") {

TEST_CASE("phase clustering wraps around pi") {
  Eigen::VectorXd phases(5);
  phases << -std::numbers::pi + 1e-12, 0.3, 0.3 + 5e-10, 1.0, std::numbers::pi;
  const auto groups = cluster_phases(phases, 1e-9);
  CHECK(groups.size() == 3);
  std::size_t largest = 0;
  for (const auto& g : groups) largest = std::max(largest, g.size());
  CHECK(largest == 2);
}

TEST_CASE("eigensystem reconstructs the unitary") {
  const CMatrix u = build_conditional_unitary(EdgeBasisIndex(0b01101, 5)).matrix;
  const UnitaryEigensystem eig = unitary_eigensystem(u);
  CMatrix d = CMatrix::Zero(10, 10);
  for (int k = 0; k < 10; ++k) d(k, k) = std::polar(1.0, eig.phases[k]);
  CHECK((eig.vectors * d * eig.vectors.adjoint() - u).norm() < 1e-12);
  CHECK((eig.vectors.adjoint() * eig.vectors - CMatrix::Identity(10, 10)).norm() < 1e-12);
}

TEST_CASE("eigenprojector average matches a long Cesaro average") {
  // Degenerate case: the translation-invariant ring walk.
  const CMatrix u = dcqw_ring_step(4);
  const CVector psi0 = WalkState::localized(4, CoinState::symmetric(), 0).amplitudes();
  const UnitaryEigensystem eig = unitary_eigensystem(u);
  const Eigen::VectorXd pop = time_averaged_populations(eig, cluster_phases(eig.phases), psi0);
  Eigen::VectorXd avg = Eigen::VectorXd::Zero(8);
  CVector psi = psi0;
  const int steps = 200000;
  for (int t = 0; t < steps; ++t) {
    avg += psi.cwiseAbs2();
    psi = u * psi;
  }
  avg /= steps;
  CHECK((avg - pop).cwiseAbs().maxCoeff() < 1e-3);
  CHECK(pop.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rotation-reduced table equals direct per-walk diagonalization") {
  const int n = 7;
  const WalkStationaryTable table(n, CoinState::symmetric(), 3);
  const CVector psi0 = WalkState::localized(n, CoinState::symmetric(), 3).amplitudes();
  double worst = 0.0;
  for (std::uint64_t i = 0; i < (1u << n); ++i) {
    const UnitaryEigensystem eig = unitary_eigensystem(build_conditional_unitary(EdgeBasisIndex(i, n)).matrix);
    const Eigen::VectorXd pop = time_averaged_populations(eig, cluster_phases(eig.phases), psi0);
    for (int p = 0; p < n; ++p) {
      worst = std::max(worst, std::abs(table.per_walk()(static_cast<Eigen::Index>(i), p) - pop[p] - pop[n + p]));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("full and conditional stationary distributions agree") {
  for (int n : {3, 4, 5}) {
    const NetworkSpec spec = NetworkSpec::make(n, std::vector<double>(static_cast<std::size_t>(n), 0.3));
    const StationaryResult a = stationary_full(spec, CoinState::symmetric(), 0);
    const StationaryResult b = stationary_conditional(spec, CoinState::symmetric(), 0);
    for (std::size_t k = 0; k < a.pi.size(); ++k) CHECK(std::abs(a.pi.probs[k] - b.pi.probs[k]) < 1e-8);
  }
  const NetworkSpec spec = NetworkSpec::make(3, {0.1, 0.25, 0.45});
  FullStationaryOptions dense;
  dense.dense = true;
  const StationaryResult a = stationary_full(spec, CoinState::symmetric(), 1, dense);
  const StationaryResult b = stationary_full(spec, CoinState::symmetric(), 1);
  for (std::size_t k = 0; k < a.pi.size(); ++k) CHECK(std::abs(a.pi.probs[k] - b.pi.probs[k]) < 1e-9);
  CHECK_THROWS_AS(stationary_full(NetworkSpec::homogeneous(7, 0.3), CoinState::symmetric(), 0), CapacityError);
}

TEST_CASE("alpha 0 averages to the uniform distribution") {
  const StationaryResult r = stationary_conditional(NetworkSpec::homogeneous(9, 0.0), CoinState::symmetric(), 0);
  for (double p : r.pi.probs) CHECK(p == doctest::Approx(1.0 / 9).epsilon(1e-10));
}

TEST_CASE("settling time") {
  const std::vector<double> d = {0.5, 0.2, 0.05, 0.2, 0.04, 0.03, 0.02, 0.01, 0.01};
  CHECK(settling_time(d, 0.05, 2) == 5);
  CHECK_FALSE(settling_time(d, 0.001, 2).has_value());
  CHECK(settling_time(d, 0.5, 8) == 1);
}

TEST_CASE("approach to the stationary distribution") {
  const NetworkSpec spec = NetworkSpec::homogeneous(7, 0.3);
  const ApproachResult r = time_to_stationary(spec, CoinState::symmetric(), 0, 0.02, 400);
  CHECK(r.distance.size() == 400);
  CHECK(r.t_pi.has_value());
  CHECK(r.distance_at(400) < 0.02);
  CHECK(r.fluctuation_after(*r.t_pi) >= 0.0);
}

TEST_CASE("quasi-period scan finds exact revivals") {
  // all-even walk on a ring is a pure translation with period N
  const CMatrix u = build_conditional_unitary(EdgeBasisIndex(0, 5)).matrix;
  const auto hits = quasi_period_scan(u, 12, 1e-9);
  REQUIRE(hits.size() == 2);
  CHECK(hits[0] == 5);
  CHECK(hits[1] == 10);
}

TEST_CASE("momentum coupling") {
  const MomentumCoupling ring = momentum_coupling(dcqw_ring_step(8), 8);
  CHECK(ring.off_block_norm < 1e-12);
  CHECK(momentum_coupling(EdgeBasisIndex(0b01010101, 8)).off_block_norm < 1e-12);
  CHECK(momentum_coupling(EdgeBasisIndex(0b00000001, 8)).normalized() > 0.1);
}

}
