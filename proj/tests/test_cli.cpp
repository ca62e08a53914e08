#include "qgs/cli.hpp"

#include <doctest.h>

#include <sstream>

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qgs::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kData = QGS_TEST_DATA;

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"spectrum", "--graph", kData + "/four_vertex.json"}).code == 2);  // no window
  CHECK(run({"spectrum", "--graph", kData + "/missing.json", "--count", "3"}).code == 2);
  CHECK(run({"spectrum", "--graph", kData + "/four_vertex.json", "--count", "3", "--mode", "x"}).code == 2);
  CHECK(run({"homog", "--tau-grid", "4"}).code == 2);
  CHECK(run({"homog", "--l1", "0.7"}).code == 2);
  CHECK(run({"smatrix", "--graph", kData + "/triangle.json", "--s", "-1"}).code == 2);
  CHECK(run({"invert", "--graph-topology", kData + "/four_vertex.json", "--true-couplings", "1,2"}).code == 2);
}

TEST_CASE("spectrum output") {
  const auto r = run({"spectrum", "--graph", kData + "/four_vertex.json", "--count", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("index,eigenvalue,multiplicity,mode\n1,0.31052258238876") != std::string::npos);
  const auto both = run({"spectrum", "--graph", kData + "/four_vertex.json", "--zmax", "20", "--mode", "both"});
  CHECK(both.code == 0);
  CHECK(both.out.find("abs_difference") != std::string::npos);
}

TEST_CASE("output does not depend on the number of threads") {
  const auto a = run({"smatrix", "--graph", kData + "/triangle.json", "--s", "0.5:6:0.5", "--jobs", "1"});
  const auto b = run({"smatrix", "--graph", kData + "/triangle.json", "--s", "0.5:6:0.5", "--jobs", "4"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto h1 = run({"homog", "--tau-grid", "-1:1:0.5", "--bands", "2", "--jobs", "1"});
  const auto h2 = run({"homog", "--tau-grid", "-1:1:0.5", "--bands", "2", "--jobs", "3"});
  REQUIRE(h1.code == 0);
  CHECK(h1.out == h2.out);
  const auto i1 = run({"invert", "--graph-topology", kData + "/four_vertex.json", "--true-couplings",
                       "0.5,-0.25,1,0.75", "--jobs", "1"});
  const auto i2 = run({"invert", "--graph-topology", kData + "/four_vertex.json", "--true-couplings",
                       "0.5,-0.25,1,0.75", "--jobs", "4"});
  REQUIRE(i1.code == 0);
  CHECK(i1.out == i2.out);
  CHECK(i1.out.find("\"V3\"") != std::string::npos);
}

TEST_CASE("smatrix json dump") {
  const auto r = run({"smatrix", "--graph", kData + "/triangle.json", "--s", "2", "--json", "-"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"external_vertices\"") != std::string::npos);
  CHECK(r.out.find("0.6883035347008") != std::string::npos);
}

TEST_CASE("check subcommand") {
  const auto r = run({"check"});
  CHECK(r.code == 0);
  CHECK(r.out.find("9/9 checks passed") != std::string::npos);
}
