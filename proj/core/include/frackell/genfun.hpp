#pragma once

#include "frackell/bell.hpp"
#include "frackell/series.hpp"

#include <string>
#include <vector>

namespace frackell {

struct GenFunOptions {
  int digits = kDefaultDigits;
  double target_rel_err = kDefaultTargetRelErr;
};

/// F_mu(s, x) = E_mu(x (e^s - 1)), the exponential generating function of
/// B_mu(x, m) in s.
PrecReal gf_bell_poly(const MuParam& mu, const Real& s, const Real& x, const GenFunOptions& opt = {});

/// E_mu(e^s - 1), the generating function of the fractional Bell numbers.
PrecReal gf_bell_numbers(const MuParam& mu, const Real& s, const GenFunOptions& opt = {});

/// G_mu(s, l) = (e^s - 1)^l / Gamma(mu l + 1), generating S_mu(m, l) over m.
PrecReal gf_stirling_fixed_l(const MuParam& mu, const Real& s, unsigned l, const GenFunOptions& opt = {});

/// E_mu(t (e^s - 1)), generating S_mu(m, l) s^m t^l / m!. Same function of
/// (s, t) as gf_bell_poly and evaluated by the same code path.
PrecReal gf_stirling_bivariate(const MuParam& mu, const Real& s, const Real& t,
                               const GenFunOptions& opt = {});

struct GenFunEntry {
  unsigned m = 0;
  PrecReal from_genfun;
  PrecReal from_polynomials;
  Real abs_diff;
  double tolerance = 0.0;
  bool exact_zero = false;  // coefficient known to vanish identically
  bool pass = false;
};

struct GenFunReport {
  MuParam mu;
  Real x_or_t;
  unsigned order_checked = 0;
  std::vector<GenFunEntry> entries;

  bool passed() const;
  std::vector<unsigned> failing_orders() const;
};

inline constexpr double kGenFunTolerance = 1e-9;
inline constexpr unsigned kGenFunMaxOrder = 60;

/// Compares B_mu(x, m)/m! from the Stirling expansion against the s^m
/// coefficient of E_mu(x (e^s - 1)). The latter is sum_l x^l/Gamma(mu l + 1)
/// [s^m](e^s - 1)^l, with [s^m](e^s - 1)^l built by exact exponential
/// power-series multiplication, so the two sides share only Gamma values.
GenFunReport verify_bell_gf(const MuParam& mu, const Real& x, unsigned max_order, const BellEvalContext& ctx,
                            double tolerance = kGenFunTolerance);

/// Compares stirling_value(mu, m, l)/m! against the s^m coefficient of
/// (e^s - 1)^l / Gamma(mu l + 1) read off the binomial expansion
/// sum_n (-1)^(l-n) binom(l, n) e^(n s). Orders m < l must vanish exactly.
GenFunReport verify_stirling_gf(const MuParam& mu, unsigned l, unsigned max_order,
                                double tolerance = kGenFunTolerance, int digits = kDefaultDigits);

}  // namespace frackell
