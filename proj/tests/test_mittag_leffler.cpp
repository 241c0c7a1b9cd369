#include "doctest.h"
#include "support.hpp"

#include "frackell/gamma.hpp"
#include "frackell/mittag_leffler.hpp"

using namespace frackell;
using testing::num;
using testing::rel_diff;

namespace {

SeriesResult ml(const char* mu, const char* z, unsigned n = 0, int digits = 50) {
  MLRequest req{MuParam(mu), parse_real(z, digits), n};
  req.digits = digits;
  return n == 0 ? ml_eval(req) : ml_derivative(req);
}

bool brackets(const SeriesResult& r, const Real& ref) {
  return abs(r.value.value() - ref) <= r.value.err_bound();
}

}  // namespace

TEST_CASE("ml_eval examples") {
  SeriesResult r0 = ml("0.7", "0");
  CHECK(r0.value.value() == 1);
  CHECK(r0.terms_used >= 1);

  SeriesResult r1 = ml("1", "-1");
  CHECK(brackets(r1, oracle::exp(Real(-1), 80)));

  SeriesResult r2 = ml("0.5", "-1");
  const Real ref = oracle::ml_half(Real(-1), 80);
  CHECK(brackets(r2, ref));
  CHECK(rel_diff(r2.value.value(), ref) < 1e-30);
  CHECK(testing::show(r2.value.value()).rfind("4.2758357615", 0) == 0);
}

TEST_CASE("ml_eval against the direct gamma series") {
  for (auto [p, q] : {std::pair{1ul, 4ul}, {3ul, 4ul}, {1ul, 3ul}}) {
    const std::string mu = std::to_string(p) + "/" + std::to_string(q);
    for (const char* z : {"-4", "-1.5", "0.3", "2"}) {
      SeriesResult r = ml(mu.c_str(), z);
      const Real ref = oracle::ml_direct({p, q}, num(z), 80);
      CHECK_MESSAGE(brackets(r, ref), "mu=" << mu << " z=" << z);
      CHECK(rel_diff(r.value.value(), ref) < 1e-30);
    }
  }
}

TEST_CASE("ml_derivative examples") {
  SeriesResult d3 = ml("1", "-2", 3);
  CHECK(brackets(d3, oracle::exp(Real(-2), 80)));

  SeriesResult d1 = ml("0.5", "0", 1);
  CHECK(brackets(d1, 1 / oracle::gamma(num("1.5"), 80)));

  SeriesResult d2 = ml("0.5", "0", 2);
  CHECK(brackets(d2, Real(2)));
}

TEST_CASE("ml_derivative is the termwise derivative of the direct series") {
  // d/dz E_mu(z) at mu = 1/2 from the closed form: 2/sqrt(pi) + 2 z E_{1/2}(z)
  for (const char* z : {"-2", "-0.5", "1"}) {
    SeriesResult r = ml("0.5", z, 1);
    PrecisionScope scope(80);
    const Real zr = num(z);
    const Real pi = boost::multiprecision::acos(Real(-1));
    const Real ref = 2 / sqrt(pi) + 2 * zr * oracle::ml_half(zr, 80);
    CHECK(brackets(r, ref));
  }
}

TEST_CASE("MLRequest validation") {
  MLRequest req{MuParam("0.5"), Real(1), kMaxDerivativeOrder + 1};
  CHECK_THROWS_AS(ml_derivative(req), DomainError);
  MLRequest bad_target{MuParam("0.5"), Real(1)};
  bad_target.target_rel_err = 0.5;
  CHECK_THROWS_AS(ml_eval(bad_target), DomainError);
  MLRequest bad_digits{MuParam("0.5"), Real(1)};
  bad_digits.digits = 5;
  CHECK_THROWS_AS(ml_eval(bad_digits), DomainError);
}

TEST_CASE("large negative argument needs more working digits") {
  SeriesResult r = ml("0.25", "-5");
  CHECK(r.working_digits > 50);
  CHECK(r.cancellation_digits > 100);
  const Real ref = oracle::ml_direct({1, 4}, Real(-5), 60);
  CHECK(brackets(r, ref));
}
