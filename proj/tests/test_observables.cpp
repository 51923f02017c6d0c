#include <doctest.h>

#include <cmath>

#include "qwalknet/conditional_engine.hpp"
#include "qwalknet/exact_engine.hpp"
#include "qwalknet/observables.hpp"

using namespace qwalknet;

TEST_SUITE("observables") {

TEST_CASE("entropies") {
  CHECK(binary_entropy(0.2) == doctest::Approx(0.7219280949).epsilon(1e-9));
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(von_neumann_entropy(CMatrix(CMatrix::Identity(8, 8) / 8.0)) == doctest::Approx(3.0));
  CMatrix pure = CMatrix::Zero(3, 3);
  pure(1, 1) = 1.0;
  CHECK(von_neumann_entropy(pure) == 0.0);
}

TEST_CASE("density validation") {
  CMatrix bad = CMatrix::Identity(2, 2) * 0.5;
  bad(0, 1) = 0.1;
  CHECK_THROWS_AS(density_spectrum(bad), Error);
  CHECK_THROWS_AS(density_spectrum(CMatrix(CMatrix::Identity(2, 2))), Error);
  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.1;
  neg(1, 1) = -0.1;
  CHECK_THROWS_AS(density_spectrum(neg), Error);
}

TEST_CASE("entropy bounds") {
  const EntropyBounds b = entropy_bounds(NetworkSpec::homogeneous(10, 0.2));
  CHECK(b.concavity_upper == doctest::Approx(10 * 0.7219280949));
  CHECK(b.dimension_upper == doctest::Approx(std::log2(20.0)));
  CHECK(b.tightest() == doctest::Approx(std::log2(20.0)));
  CHECK(entropy_bounds(NetworkSpec::homogeneous(3, 0.5)).dimension_upper == doctest::Approx(std::log2(6.0)));
}

TEST_CASE("negativity of simple two-qubit states") {
  CVector bell = CVector::Zero(4);
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  const CMatrix rho = bell * bell.adjoint();
  CHECK(negativity_qubits(rho, 0b01) == doctest::Approx(0.5));
  CHECK(pure_edge_negativity(0.5) == doctest::Approx(0.5));
  CHECK(pure_edge_negativity(0.2) == doctest::Approx(0.4));
  CVector product = CVector::Zero(4);
  product[1] = 1.0;
  CHECK(negativity_qubits(product * product.adjoint(), 0b01) == doctest::Approx(0.0));
}

TEST_CASE("partial transpose is an involution that keeps the trace") {
  CMatrix rho = CMatrix::Random(16, 16);
  rho = rho * rho.adjoint();
  rho /= rho.trace();
  const CMatrix pt = partial_transpose(rho, 0b0101);
  CHECK((partial_transpose(pt, 0b0101) - rho).norm() < 1e-14);
  CHECK(std::abs(pt.trace() - rho.trace()) < 1e-14);
}

TEST_CASE("negativity input checks") {
  const ConditionalEnsemble ens = init_ensemble(NetworkSpec::homogeneous(4, 0.3), CoinState::symmetric(), 0);
  const DensityMatrix rho = network_density(ens);
  Bipartition l3 = Bipartition::equipartition(4);
  l3.kind = CutKind::l3;
  CHECK_THROWS_AS(negativity(rho, l3), Error);
  CHECK_THROWS_AS(negativity(rho, Bipartition::equipartition(5)), Error);
  CHECK(negativity(rho, Bipartition::equipartition(4)) == 0.0);
}

TEST_CASE("reduced-basis and physical-qubit negativity agree") {
  for (int n : {3, 4, 5}) {
    const NetworkSpec spec = NetworkSpec::homogeneous(n, 0.4);
    FullState full = init_full(spec, CoinState::symmetric(), 0);
    ConditionalEnsemble ens = init_ensemble(spec, CoinState::symmetric(), 0);
    const Bipartition cut = Bipartition::arc(n, 1, n / 2);
    for (int t = 1; t <= 6; ++t) {
      full = step_full(full);
      ens.advance();
    }
    const double reduced = negativity(network_density(ens), cut);
    const double physical = negativity_qubits(reduce_full(full, Subsystem::network).entries, physical_qubit_mask(cut));
    CHECK(std::abs(reduced - physical) < 1e-8);
    CHECK(reduced > 1e-3);
  }
}

TEST_CASE("moments of a uniform distribution") {
  const Distribution d = make_distribution(std::vector<double>(15, 1.0 / 15), 0);
  const MomentSummary m = moments(d);
  CHECK(std::abs(m.mean) < 1e-15);
  CHECK(m.variance == doctest::Approx(18.6666666667).epsilon(1e-10));
  CHECK(d.at_label(-7) == doctest::Approx(1.0 / 15));
  CHECK_THROWS_AS(d.at_label(8), Error);
}

TEST_CASE("variance scaling fit") {
  std::vector<std::pair<int, double>> pts;
  for (int n = 7; n <= 15; ++n) pts.push_back({n, 0.07 * n * n + 0.3});
  const ScalingFit f = variance_scaling_fit(pts);
  CHECK(f.a == doctest::Approx(0.07).epsilon(1e-12));
  CHECK(f.b == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(f.residual < 1e-10);
  const std::vector<std::pair<int, double>> two = {{7, 1.0}, {8, 2.0}, {8, 2.1}};
  CHECK_THROWS_WITH_AS(variance_scaling_fit(two), doctest::Contains("degenerate design"), Error);
}

TEST_CASE("total variation and running averages") {
  const Distribution p = make_distribution({1.0, 0.0, 0.0}, 0);
  const Distribution q = make_distribution({0.0, 0.5, 0.5}, 0);
  CHECK(tv_distance(p, q) == doctest::Approx(1.0));
  CHECK(tv_distance(p, p) == 0.0);
  CHECK_THROWS_AS(tv_distance(p, make_distribution({0.5, 0.5}, 0)), Error);
  const std::vector<Distribution> series = {p, q};
  const Distribution avg = running_time_average(series);
  CHECK(avg.probs[0] == doctest::Approx(0.5));
  CHECK(avg.probs[1] == doctest::Approx(0.25));
  RunningAverage streaming(p.labels);
  streaming.add(p.probs);
  streaming.add(q.probs);
  CHECK(streaming.current().probs == avg.probs);
}

}
