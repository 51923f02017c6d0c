#include <doctest.h>

#include <bit>
#include <cmath>

#include "qwalknet/network.hpp"

using namespace qwalknet;

TEST_SUITE("network") {

TEST_CASE("validation rejects bad sizes and parameters") {
  CHECK_THROWS_AS(NetworkSpec::homogeneous(2, 0.1), Error);
  CHECK_THROWS_AS(NetworkSpec::homogeneous(31, 0.1), Error);
  CHECK_THROWS_AS(NetworkSpec::make(4, {0.1, 0.2, 0.3}), Error);
  CHECK_THROWS_WITH_AS(NetworkSpec::homogeneous(5, 0.7), doctest::Contains("1 - a"), Error);
  CHECK_THROWS_AS(NetworkSpec::homogeneous(5, -0.01), Error);
  CHECK_NOTHROW(NetworkSpec::homogeneous(3, 0.5));
}

TEST_CASE("json round trip") {
  const NetworkSpec spec = NetworkSpec::make(4, {0.1, 0.2, 0.3, 0.4});
  const NetworkSpec back = NetworkSpec::from_json(spec.to_json());
  CHECK(back.n_vertices() == 4);
  CHECK(back.alpha(2) == doctest::Approx(0.3));
  CHECK_FALSE(back.is_homogeneous());
  CHECK(initial_network_entanglement(spec) == doctest::Approx(0.25));
}

TEST_CASE("basis strings duplicate each edge bit, most significant edge first") {
  CHECK(basis_string(1, 3) == "000011");
  CHECK(basis_string(4, 3) == "110000");
  CHECK(basis_string(EdgeBasisIndex(5, 3)) == "110011");
  CHECK_THROWS_AS(EdgeBasisIndex(8, 3), Error);
}

TEST_CASE("weights") {
  const NetworkSpec spec = NetworkSpec::homogeneous(3, 0.2);
  CHECK(weight(EdgeBasisIndex(0, 3), spec) == doctest::Approx(0.0894427191).epsilon(1e-9));
  CHECK(weight(EdgeBasisIndex(7, 3), spec) == doctest::Approx(std::pow(0.8, 1.5)));
  const auto w = weights(NetworkSpec::make(5, {0.0, 0.1, 0.25, 0.4, 0.5}));
  double total = 0.0;
  for (double f : w) total += f * f;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  const auto z = weights(NetworkSpec::homogeneous(4, 0.0));
  CHECK(z[15] == doctest::Approx(1.0));
  CHECK(z[0] == 0.0);
}

TEST_CASE("vertex parity") {
  // edge bits 0b0011 on N=4: vertex 0 sees edges 3 and 0 -> (0, 1): odd
  const EdgeBasisIndex idx(0b0011, 4);
  CHECK(vertex_parity(idx, 0) == Parity::odd);
  CHECK(vertex_parity(idx, 1) == Parity::even);
  CHECK(vertex_parity(idx, 2) == Parity::odd);
  CHECK(vertex_parity(idx, 3) == Parity::even);
  CHECK(odd_vertex_mask(idx) == 0b0101);
  CHECK(odd_vertex_mask(EdgeBasisIndex(0b010101, 6)) == 0b111111);
  CHECK(odd_vertex_mask(EdgeBasisIndex(0, 6)) == 0);
  CHECK(odd_vertex_mask(EdgeBasisIndex(0b111111, 6)) == 0);
}

TEST_CASE("odd vertex count is always even") {
  for (std::uint64_t i = 0; i < 128; ++i) {
    CHECK(std::popcount(odd_vertex_mask(EdgeBasisIndex(i, 7))) % 2 == 0);
  }
}

TEST_CASE("bipartitions and negativity bounds") {
  const Bipartition b = Bipartition::equipartition(10);
  CHECK(b.part_a_edges.size() == 5);
  CHECK(b.part_a_mask() == 0b11111);
  CHECK(b.qubits_a() == 10);
  const NegativityBound bound = max_negativity_bound(b);
  CHECK(bound.physical == doctest::Approx(511.5));
  CHECK(bound.effective == doctest::Approx(15.5));
  const Bipartition wrap = Bipartition::arc(6, 4, 3);
  CHECK(wrap.part_a_mask() == 0b110001);
  CHECK_THROWS_AS(Bipartition::arc(6, 0, 0), Error);
  CHECK_THROWS_AS(Bipartition::arc(6, 0, 6), Error);
}

}
