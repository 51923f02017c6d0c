#include <doctest.h>

#include <filesystem>

#include "qwalknet/io.hpp"

using namespace qwalknet;

TEST_SUITE("io") {

TEST_CASE("double formatting round trips") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, -2.5, 0.0}) CHECK(std::stod(io::format_double(x)) == x);
  CHECK(io::format_double(0.25) == "0.25");
}

TEST_CASE("atomic write with sidecar") {
  const auto dir = std::filesystem::temp_directory_path() / "qwalknet_io_test";
  std::filesystem::remove_all(dir);
  io::write_with_meta(dir / "x.csv", "a,b\n1,2\n", {{"n_vertices", 5}});
  CHECK(io::read_file(dir / "x.csv") == "a,b\n1,2\n");
  const auto meta = nlohmann::json::parse(io::read_file(dir / "x.csv.meta.json"));
  CHECK(meta["n_vertices"] == 5);
  CHECK(meta["version"] == "0.1.0");
  CHECK_FALSE(std::filesystem::exists(dir / "x.csv.tmp"));
  std::filesystem::remove_all(dir);
}

}
