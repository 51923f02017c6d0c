#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "qwalknet/conditional_engine.hpp"
#include "qwalknet/exact_engine.hpp"

using namespace qwalknet;

TEST_SUITE("exact_engine") {

TEST_CASE("vertex qubits") {
  CHECK(vertex_qubits(0, 5) == std::pair<int, int>{9, 0});
  CHECK(vertex_qubits(3, 5) == std::pair<int, int>{5, 6});
}

TEST_CASE("initial state is normalized and parity-even") {
  const FullState s = init_full(NetworkSpec::make(3, {0.1, 0.3, 0.5}), CoinState::symmetric(), 1);
  CHECK(s.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-14));
  const auto pops = config_populations(s);
  for (std::uint64_t g = 0; g < s.n_configs(); ++g) {
    bool paired = true;
    for (int e = 0; e < 3; ++e) paired = paired && (((g >> (2 * e)) & 1u) == ((g >> (2 * e + 1)) & 1u));
    if (!paired) CHECK(pops[g] == 0.0);
  }
}

TEST_CASE("capacity guard") {
  CHECK_THROWS_WITH_AS(init_full(NetworkSpec::homogeneous(9, 0.2), CoinState::zero(), 0),
                       doctest::Contains("dimension cap"), CapacityError);
}

TEST_CASE("first-step parity law") {
  for (double a : {0.0, 0.1, 0.25, 0.5}) {
    const FullState s = init_full(NetworkSpec::homogeneous(4, a), CoinState::zero(), 0);
    const auto [even, odd] = parity_probs_full(s, 0);
    CHECK(std::abs(odd - 2 * a * (1 - a)) < 1e-12);
    CHECK(std::abs(even - (a * a + (1 - a) * (1 - a))) < 1e-12);
  }
}

TEST_CASE("one step from coin |0> at alpha 0.5") {
  const FullState s = step_full(init_full(NetworkSpec::homogeneous(4, 0.5), CoinState::zero(), 0));
  const auto p = position_distribution_full(s);
  CHECK(p[1] == doctest::Approx(0.75).epsilon(1e-13));
  CHECK(p[3] == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("sparse operator agrees with step_full") {
  const NetworkSpec spec = NetworkSpec::make(3, {0.2, 0.4, 0.1});
  FullState s = init_full(spec, CoinState::symmetric(), 0);
  const auto u = full_step_operator(3, hadamard_coin());
  CVector v = s.amplitudes();
  for (int t = 0; t < 5; ++t) {
    s = step_full(s);
    v = u * v;
  }
  CHECK((v - s.amplitudes()).norm() < 1e-13);
  const CMatrix dense(u);
  CHECK((dense.adjoint() * dense - CMatrix::Identity(dense.rows(), dense.cols())).norm() < 1e-12);
}

TEST_CASE("exact and conditional engines agree") {
  for (int n : {3, 4}) {
    for (double a : {0.0, 0.1, 0.3, 0.5}) {
      const NetworkSpec spec = NetworkSpec::homogeneous(n, a);
      FullState full = init_full(spec, CoinState::symmetric(), 0);
      ConditionalEnsemble ens = init_ensemble(spec, CoinState::symmetric(), 0);
      for (int t = 1; t <= 12; ++t) {
        full = step_full(full);
        ens.advance();
        const auto pa = position_distribution_full(full);
        const auto pb = ensemble_distribution(ens);
        for (int k = 0; k < n; ++k) CHECK(std::abs(pa[k] - pb[k]) < 1e-12);
      }
      // reduced network state on the paired subspace equals rho_G
      const CMatrix rho = reduce_full(full, Subsystem::network).entries;
      const CMatrix rg = network_density(ens).entries;
      auto lift = [&](Eigen::Index i) {
        Eigen::Index g = 0;
        for (int e = 0; e < n; ++e) {
          if ((i >> e) & 1) g |= Eigen::Index{3} << (2 * e);
        }
        return g;
      };
      double worst = 0.0;
      for (Eigen::Index i = 0; i < rg.rows(); ++i) {
        for (Eigen::Index j = 0; j < rg.cols(); ++j) worst = std::max(worst, std::abs(rg(i, j) - rho(lift(i), lift(j))));
      }
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("vertex-pair reduction reproduces the parity probabilities") {
  FullState s = init_full(NetworkSpec::homogeneous(3, 0.3), CoinState::symmetric(), 0);
  for (int t = 0; t < 4; ++t) s = step_full(s);
  const DensityMatrix pair = reduce_full(s, Subsystem::vertex_pair, 1);
  CHECK(pair.basis_labels.size() == 4);
  const double odd = pair.entries(1, 1).real() + pair.entries(2, 2).real();
  CHECK(odd == doctest::Approx(parity_probs_full(s, 1).second).epsilon(1e-13));
}

TEST_CASE("snapshot round trip") {
  FullState s = init_full(NetworkSpec::homogeneous(3, 0.2), CoinState::symmetric(), 2);
  s = step_full(step_full(s));
  const auto path = std::filesystem::temp_directory_path() / "qwalknet_snapshot_test.bin";
  write_snapshot(s, path);
  const FullState back = read_snapshot(path);
  std::filesystem::remove(path);
  CHECK(back.n_vertices() == 3);
  CHECK(back.time() == 2);
  CHECK(back.start_position == 2);
  CHECK((back.amplitudes() - s.amplitudes()).norm() == 0.0);
}

}
