#include "doctest.h"
#include "support.hpp"

#include "frackell/combinatorics.hpp"
#include "frackell/gamma.hpp"
#include "frackell/stirling.hpp"

using namespace frackell;
using testing::num;

namespace {

const std::vector<std::vector<int>> kRows = {
    {1}, {1, 2}, {1, 6, 6}, {1, 14, 36, 24}, {1, 30, 150, 240, 120}, {1, 62, 540, 1560, 1800, 720}};

}  // namespace

TEST_CASE("numerator triangle rows 1..6") {
  StirlingTriangle t = build_triangle(6);
  for (unsigned m = 1; m <= 6; ++m) {
    for (unsigned l = 1; l <= m; ++l) {
      CHECK_MESSAGE(t.numerator(m, l) == kRows[m - 1][l - 1], "m=" << m << " l=" << l);
    }
  }
  CHECK(t.numerator(4, 2) == 14);
  CHECK(t.numerator(6, 3) == 540);
  CHECK(t.numerator(5, 5) == 120);
}

TEST_CASE("triangle boundary conditions") {
  StirlingTriangle t = build_triangle(40);
  CHECK(t.numerator(0, 0) == 1);
  for (unsigned m = 1; m <= 40; ++m) {
    CHECK(t.numerator(m, 0) == 0);
    CHECK(t.numerator(m, 1) == 1);
    CHECK(t.numerator(m, m) == big_factorial(m));
    for (unsigned l = 1; l <= m; ++l) CHECK(t.numerator(m, l) > 0);
  }
  CHECK(t.numerator(3, 4) == 0);
  CHECK_THROWS_AS(t.numerator(41, 1), CapacityError);
}

TEST_CASE("build_triangle range") {
  CHECK_THROWS_AS(build_triangle(0), DomainError);
  CHECK_THROWS_AS(build_triangle(kMaxTriangleOrder + 1), DomainError);
}

TEST_CASE("threaded build is identical") {
  StirlingTriangle a = build_triangle(80, 1);
  StirlingTriangle b = build_triangle(80, 4);
  for (unsigned m = 0; m <= 80; ++m) CHECK(a.row(m) == b.row(m));
}

TEST_CASE("stirling_numerator matches the triangle") {
  StirlingTriangle t = build_triangle(12);
  for (unsigned m = 0; m <= 12; ++m)
    for (unsigned l = 0; l <= m; ++l) CHECK(stirling_numerator(m, l) == t.numerator(m, l));
}

TEST_CASE("classic triangle examples") {
  auto s = classic_stirling_triangle(10);
  CHECK(s[3][2] == 3);
  CHECK(s[6][2] == 31);
  for (unsigned m = 1; m <= 10; ++m) CHECK(s[m][m] == 1);
  auto ref = oracle::stirling2(10);
  for (unsigned m = 0; m <= 10; ++m)
    for (unsigned l = 0; l <= m; ++l) CHECK(s[m][l] == ref[m][l]);
}

TEST_CASE("c(m,l) = l! S(m,l) up to m = 60") {
  StirlingTriangle t = build_triangle(60);
  auto s = oracle::stirling2(60);
  for (unsigned m = 0; m <= 60; ++m)
    for (unsigned l = 0; l <= m; ++l) REQUIRE(t.numerator(m, l) == big_factorial(l) * s[m][l]);
}

TEST_CASE("stirling_value examples") {
  PrecReal v = stirling_value(MuParam("0.5"), 3, 3);
  const Real ref = 6 / oracle::gamma(num("2.5"), 80);
  CHECK(abs(v.value() - ref) <= v.err_bound());
  CHECK(testing::show(v.value()).rfind("4.5135166683", 0) == 0);

  CHECK(stirling_value(MuParam("0.3"), 5, 7).value() == 0);
  CHECK(stirling_value(MuParam("0.3"), 5, 7).err_bound() == 0);
  CHECK(stirling_value(MuParam("0.3"), 4, 0).value() == 0);
  CHECK(stirling_value(MuParam("0.3"), 0, 0).value() == 1);

  PrecReal s42 = stirling_value(MuParam("1"), 4, 2);
  CHECK(s42.value() == 7);
  CHECK(s42.err_bound() == 0);
}

TEST_CASE("mu = 1 values are the classic numbers exactly") {
  StirlingTriangle t = build_triangle(25);
  auto s = classic_stirling_triangle(25);
  for (unsigned m = 0; m <= 25; ++m)
    for (unsigned l = 0; l <= m; ++l) {
      PrecReal v = stirling_value(MuParam("1"), t, m, l, 60);
      CHECK(v.value() == Real(s[m][l]));
    }
}
