#include "qgs/errors.hpp"
#include "qgs/io.hpp"

#include <doctest.h>

#include <cmath>

using namespace qgs;

TEST_CASE("format_double round-trips") {
  for (const double x : {0.1, 1.0 / 3.0, -2.5e-300, 65.853733851112381})
    CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("ranges include the end point when it lies on the grid") {
  CHECK(parse_range("0:1:0.25") == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(parse_range("0.1:0.3:0.1").size() == 3);
  CHECK(parse_range("0:1:0.3").size() == 4);
  CHECK_THROWS_AS(parse_range("0:1"), InputError);
  CHECK_THROWS_AS(parse_range("0:1:0"), InputError);
  CHECK_THROWS_AS(parse_range("1:0:0.1"), InputError);
  CHECK_THROWS_AS(parse_range("a:1:0.1"), InputError);
}

TEST_CASE("lists") {
  CHECK(parse_real_list("0.2, 0.1,0.05") == std::vector<double>{0.2, 0.1, 0.05});
  CHECK_THROWS_AS(parse_real_list("0.2,,0.1"), InputError);
  const auto c = parse_complex_list("1.5,-2:0.25");
  REQUIRE(c.size() == 2);
  CHECK(c[0] == Complex(1.5, 0.0));
  CHECK(c[1] == Complex(-2.0, 0.25));
  CHECK_THROWS_AS(parse_complex_list("1:2:3"), InputError);
}

TEST_CASE("RtD sample files") {
  const auto s = parse_rtd_samples(
      "# comment\n"
      "target,z_re,z_im,f1_re,f1_im\n"
      "V1,-1024,0,-0.03,0\n"
      "V2,-1024,0,-0.015,0.001\n"
      "V1,-4096,0,-0.0155,0\n");
  REQUIRE(s.size() == 2);
  CHECK(s.at("V1").size() == 2);
  CHECK(s.at("V2").front().f1 == Complex(-0.015, 0.001));
  try {
    parse_rtd_samples("target,z_re,z_im,f1_re,f1_im\nV1,-1,0,x,0\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_rtd_samples("V1,1,2\n"), ParseError);
}

TEST_CASE("CSV layout") {
  CsvTable t;
  t.add_meta("mode", "weyl");
  t.header = {"a", "b"};
  t.add_row({"1", "2"});
  CHECK(t.str() == "# mode=weyl\na,b\n1,2\n");
  CHECK_THROWS_AS(t.add_row({"1"}), InputError);
}
