#include "frackell/genfun.hpp"

#include "frackell/combinatorics.hpp"
#include "frackell/gamma.hpp"
#include "frackell/mittag_leffler.hpp"

#include <string>

namespace frackell {

namespace {

constexpr int kGuard = 10;

Real expm1_at(const Real& s, int digits) {
  PrecisionScope scope(digits);
  Real sw = at_digits(s, digits);
  Real out;
  mpfr_expm1(out.backend().data(), sw.backend().data(), MPFR_RNDN);
  return out;
}

PrecReal finish(const Real& value, const Real& err, int digits) {
  PrecisionScope scope(digits);
  Real rounded = at_digits(value, digits);
  return PrecReal(rounded, digits, at_digits(err + abs(rounded - value), digits));
}

// E_mu(x (e^s - 1)); the single code path behind both bivariate generating functions.
PrecReal ml_of_expm1(const MuParam& mu, const Real& s, const Real& x, const GenFunOptions& opt) {
  check_digits(opt.digits);
  const int inner = opt.digits + kGuard;
  Real z;
  {
    PrecisionScope scope(inner);
    z = at_digits(x, inner) * expm1_at(s, inner);
  }
  SumOptions so;
  so.digits = inner;
  so.target_rel_err = opt.target_rel_err;
  SeriesResult r = ml_series(mu, z, 0, so);

  // z is rounded at digits + 10; its effect sits below the output precision.
  return finish(r.value.value(), r.value.err_bound(), opt.digits);
}

}  // namespace

PrecReal gf_bell_poly(const MuParam& mu, const Real& s, const Real& x, const GenFunOptions& opt) {
  return ml_of_expm1(mu, s, x, opt);
}

PrecReal gf_bell_numbers(const MuParam& mu, const Real& s, const GenFunOptions& opt) {
  PrecisionScope scope(opt.digits);
  return ml_of_expm1(mu, s, Real(1), opt);
}

PrecReal gf_stirling_fixed_l(const MuParam& mu, const Real& s, unsigned l, const GenFunOptions& opt) {
  check_digits(opt.digits);
  if (l == 0) return PrecReal::exact(Real(1), opt.digits);
  const int inner = opt.digits + kGuard;
  const Real arg = mu.times_plus_one(l, inner);
  PrecReal g = gamma_real(arg, inner);
  PrecisionScope scope(inner);
  Real base = expm1_at(s, inner);
  Real value = pow(base, static_cast<int>(l)) / g.value();
  Real rel = g.err_bound() / g.value() + Real(2 * l + 4) * unit_roundoff(inner);
  return finish(value, abs(value) * rel, opt.digits);
}

PrecReal gf_stirling_bivariate(const MuParam& mu, const Real& s, const Real& t, const GenFunOptions& opt) {
  return ml_of_expm1(mu, s, t, opt);
}

bool GenFunReport::passed() const {
  for (const auto& e : entries) {
    if (!e.pass) return false;
  }
  return true;
}

std::vector<unsigned> GenFunReport::failing_orders() const {
  std::vector<unsigned> out;
  for (const auto& e : entries) {
    if (!e.pass) out.push_back(e.m);
  }
  return out;
}

namespace {

// EGF coefficients of (e^s - 1)^l: entry [l][m] = m! [s^m] (e^s - 1)^l.
std::vector<std::vector<BigInt>> expm1_power_table(unsigned max_order) {
  const unsigned n = max_order + 1;
  std::vector<std::vector<BigInt>> binom(n);
  for (unsigned m = 0; m < n; ++m) {
    binom[m].resize(m + 1);
    binom[m][0] = binom[m][m] = 1;
    for (unsigned i = 1; i < m; ++i) binom[m][i] = binom[m - 1][i - 1] + binom[m - 1][i];
  }
  std::vector<std::vector<BigInt>> power(n, std::vector<BigInt>(n, BigInt(0)));
  power[0][0] = 1;
  for (unsigned l = 1; l < n; ++l) {
    // (a * b)_m = sum_i binom(m, i) a_i b_(m-i), with b = e^s - 1 = (0, 1, 1, ...).
    for (unsigned m = 0; m < n; ++m) {
      BigInt acc = 0;
      for (unsigned i = 0; i < m; ++i) acc += binom[m][i] * power[l - 1][i];
      power[l][m] = acc;
    }
  }
  return power;
}

void check_report_order(unsigned max_order) {
  if (max_order > kGenFunMaxOrder) {
    throw DomainError("generating-function checks support orders <= " + std::to_string(kGenFunMaxOrder));
  }
}

}  // namespace

GenFunReport verify_bell_gf(const MuParam& mu, const Real& x, unsigned max_order, const BellEvalContext& ctx,
                            double tolerance) {
  check_report_order(max_order);
  if (max_order > ctx.triangle().m_max()) {
    throw CapacityError("verify_bell_gf: order " + std::to_string(max_order) + " exceeds the context triangle");
  }
  if (!(mu == ctx.mu())) throw ContractError("verify_bell_gf: mu differs from the Bell context");

  const int digits = ctx.digits();
  const int inner = digits + kGuard;
  const auto power = expm1_power_table(max_order);
  GammaLadder ladder(mu, inner);

  GenFunReport report{mu, at_digits(x, digits), max_order, {}};
  PrecisionScope scope(inner);
  const Real xw = at_digits(x, inner);
  const Real u = unit_roundoff(inner);
  const Real tol(tolerance);
  Real factorial = 1;
  for (unsigned m = 0; m <= max_order; ++m) {
    if (m > 0) factorial *= m;
    Real sum = 0;
    Real err = 0;
    Real xpow = 1;
    for (unsigned l = 0; l <= m; ++l) {
      if (l > 0) xpow *= xw;
      if (power[l][m] == 0) continue;
      Real term = Real(power[l][m]) * xpow / ladder.at(l);
      sum += term;
      err += abs(term) * Real(ladder.rel_err_ulps(l) + l + 4) * u;
    }
    Real gf_value = sum / factorial;
    Real gf_err = (err + Real(m + 2) * u * abs(sum)) / factorial;

    PrecReal poly = bell_poly(ctx, x, m);
    Real poly_value = poly.value() / factorial;
    Real poly_err = poly.err_bound() / factorial + abs(poly_value) * u;

    GenFunEntry e{m, finish(gf_value, gf_err, digits), finish(poly_value, poly_err, digits),
                  Real(0), tolerance, false, false};
    e.abs_diff = at_digits(abs(gf_value - poly_value), digits);
    e.pass = e.abs_diff <= tol;
    report.entries.push_back(std::move(e));
  }
  return report;
}

GenFunReport verify_stirling_gf(const MuParam& mu, unsigned l, unsigned max_order, double tolerance,
                                int digits) {
  check_report_order(max_order);
  check_digits(digits);
  if (l > max_order) throw DomainError("verify_stirling_gf requires l <= max_order");

  const int inner = digits + kGuard;
  Real gamma_value;
  Real gamma_rel;
  {
    PrecisionScope scope(inner);
    PrecReal g = gamma_real(mu.times_plus_one(l, inner), inner);
    gamma_value = g.value();
    gamma_rel = g.err_bound() / g.value();
  }

  GenFunReport report{mu, Real(l), max_order, {}};
  PrecisionScope scope(inner);
  const Real u = unit_roundoff(inner);
  const Real tol(tolerance);
  BigInt factorial = 1;
  for (unsigned m = 0; m <= max_order; ++m) {
    if (m > 0) factorial *= m;
    // [s^m] sum_n (-1)^(l-n) binom(l, n) e^(n s) = sum_n (-1)^(l-n) binom(l, n) n^m / m!
    BigInt coeff = 0;
    for (unsigned n = 0; n <= l; ++n) {
      BigInt term = big_binomial(l, n) * (m == 0 ? BigInt(1) : boost::multiprecision::pow(BigInt(n), m));
      if ((l - n) % 2 == 0) {
        coeff += term;
      } else {
        coeff -= term;
      }
    }
    PrecReal direct = stirling_value(mu, m, l, inner);
    const Real mf(factorial);

    GenFunEntry e{m, PrecReal::exact(Real(0), digits), PrecReal::exact(Real(0), digits), Real(0), tolerance,
                  m < l, false};
    if (m < l) {
      // Both sides must be identically zero, not merely small.
      e.pass = coeff == 0 && direct.value() == 0 && direct.err_bound() == 0;
      if (coeff != 0) {
        e.from_genfun = finish(Real(coeff) / mf / gamma_value, Real(0), digits);
      }
      e.from_polynomials = finish(direct.value() / mf, direct.err_bound() / mf, digits);
      e.abs_diff = at_digits(abs(e.from_genfun.value() - e.from_polynomials.value()), digits);
    } else {
      Real gf_value = Real(coeff) / mf / gamma_value;
      Real gf_err = abs(gf_value) * (gamma_rel + Real(4) * u);
      Real poly_value = direct.value() / mf;
      Real poly_err = direct.err_bound() / mf + abs(poly_value) * u;
      e.from_genfun = finish(gf_value, gf_err, digits);
      e.from_polynomials = finish(poly_value, poly_err, digits);
      e.abs_diff = at_digits(abs(gf_value - poly_value), digits);
      e.pass = e.abs_diff <= tol;
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace frackell
