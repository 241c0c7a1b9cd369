#include "frackell_cli/checks.hpp"

#include "frackell/bell.hpp"
#include "frackell/genfun.hpp"
#include "frackell/poisson.hpp"
#include "frackell/stirling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <string>

namespace frackell::cli {

bool CheckReport::passed() const { return failures() == 0; }

std::size_t CheckReport::failures() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const CheckRow& r) { return !r.pass; }));
}

namespace {

const char* const kGridMus[] = {"0.25", "0.5", "0.75", "1"};

std::vector<MuParam> mus_or_default(const CheckOptions& opt) {
  if (!opt.mus.empty()) return opt.mus;
  std::vector<MuParam> out;
  for (const char* m : kGridMus) out.emplace_back(m);
  return out;
}

std::vector<std::string> xs_or(const CheckOptions& opt, std::vector<std::string> fallback) {
  if (opt.x) return {*opt.x};
  return fallback;
}

std::string dec(const Real& v, int digits) { return to_decimal(at_digits(v, digits)); }

enum class Measure { abs, rel };

CheckRow compare(std::string check, const MuParam& mu, std::string params, const Real& lhs, const Real& rhs,
                 Measure measure, const Real& tolerance, int digits) {
  PrecisionScope scope(digits + 10);
  Real diff = abs(at_digits(lhs, digits + 10) - at_digits(rhs, digits + 10));
  if (measure == Measure::rel && rhs != 0) diff /= abs(rhs);
  CheckRow row;
  row.check = std::move(check);
  row.mu = mu.str();
  row.params = std::move(params);
  row.lhs = dec(lhs, digits);
  row.rhs = dec(rhs, digits);
  row.measure = measure == Measure::abs ? "abs" : "rel";
  row.diff = dec(diff, 15);
  row.tolerance = dec(tolerance, 15);
  row.pass = diff <= tolerance;
  return row;
}

CheckRow exact_row(std::string check, const MuParam& mu, std::string params, const std::string& lhs,
                   const std::string& rhs) {
  CheckRow row;
  row.check = std::move(check);
  row.mu = mu.str();
  row.params = std::move(params);
  row.lhs = lhs;
  row.rhs = rhs;
  row.measure = "exact";
  row.diff = lhs == rhs ? "0" : "nonzero";
  row.tolerance = "0";
  row.pass = lhs == rhs;
  return row;
}

Real tol(double v, int digits) {
  PrecisionScope scope(digits);
  return Real(v);
}

// e^(-x) x^n / n! at `digits`.
Real poisson_mass(const Real& x, unsigned n, int digits) {
  PrecisionScope scope(digits);
  Real v = exp(-at_digits(x, digits));
  for (unsigned k = 1; k <= n; ++k) v = v * x / k;
  return v;
}

// e^(-x) sum_n n^m x^n / n!.
Real dobinski(const Real& x, unsigned m, int digits) {
  if (x == 0) return Real(m == 0 ? 1 : 0);
  TermSource source = [&x, m](int work) -> TermStream {
    struct State {
      Real scale = 1;  // x^n / n!
      Real xw;
      unsigned n = 0;
    };
    auto st = std::make_shared<State>();
    st->xw = at_digits(x, work);
    return [st, m]() -> SeriesTerm {
      Real power = m == 0 ? Real(1) : pow(Real(st->n), static_cast<int>(m));
      SeriesTerm t{power * st->scale, static_cast<double>(2 * st->n + m + 2)};
      ++st->n;
      st->scale = st->scale * st->xw / st->n;
      return t;
    };
  };
  SumOptions opt;
  opt.digits = digits;
  SeriesResult sum = sum_adaptive(source, opt);
  PrecisionScope scope(digits);
  return sum.value.value() * exp(-at_digits(x, digits));
}

void suite_mu1(const CheckOptions& opt, CheckReport& report) {
  const MuParam one("1");
  const int d = opt.digits;
  PoissonOptions popt{d, opt.target_rel_err};

  for (const char* nt : {"0.5", "1", "2.5", "5", "10"}) {
    PmfParams params(one, parse_real(nt, d), parse_real("1", d));
    DistributionTable table = pmf_table(params, 50, popt);
    for (unsigned n = 0; n <= 50; ++n) {
      report.rows.push_back(compare("pmf-poisson", one, "nu*t=" + std::string(nt) + " n=" + std::to_string(n),
                                    table.masses[n].value(), poisson_mass(parse_real(nt, d + 10), n, d + 10),
                                    Measure::rel, tol(1e-12, d), d));
    }
  }

  BellEvalContext ctx(one, 8, d);
  for (const char* xs : {"0.5", "1", "2", "5"}) {
    const Real x = parse_real(xs, d);
    for (unsigned m = 0; m <= 8; ++m) {
      report.rows.push_back(compare("bell-touchard", one, "x=" + std::string(xs) + " m=" + std::to_string(m),
                                    bell_poly(ctx, x, m).value(), dobinski(x, m, d + 10), Measure::rel,
                                    tol(1e-12, d), d));
    }
  }

  const auto classic = classic_stirling_triangle(20);
  for (unsigned m = 0; m <= 20; ++m) {
    for (unsigned l = 0; l <= m; ++l) {
      PrecReal v = stirling_value(one, m, l, d);
      const std::string lhs = v.value().convert_to<BigInt>().str();
      const bool integral = v.value() == floor(v.value());
      report.rows.push_back(exact_row("stirling-classic", one, "m=" + std::to_string(m) + " l=" + std::to_string(l),
                                      integral ? lhs : dec(v.value(), d), classic[m][l].str()));
    }
  }

  GenFunOptions gopt{d, opt.target_rel_err};
  for (const char* ss : {"-1", "0.25", "0.6931471805599453"}) {
    const Real s = parse_real(ss, d);
    for (const char* xs : {"0.5", "1", "2"}) {
      const Real x = parse_real(xs, d);
      Real expected;
      {
        PrecisionScope scope(d + 10);
        expected = exp(at_digits(x, d + 10) * (exp(at_digits(s, d + 10)) - 1));
      }
      report.rows.push_back(compare("genfun-exp", one, "s=" + std::string(ss) + " x=" + std::string(xs),
                                    gf_bell_poly(one, s, x, gopt).value(), expected, Measure::rel, tol(1e-25, d), d));
    }
    Real expected;
    {
      PrecisionScope scope(d + 10);
      expected = exp(exp(at_digits(s, d + 10)) - 1);
    }
    report.rows.push_back(compare("genfun-bell-numbers-exp", one, "s=" + std::string(ss),
                                  gf_bell_numbers(one, s, gopt).value(), expected, Measure::rel, tol(1e-25, d), d));
  }
}

void suite_normalization(const CheckOptions& opt, CheckReport& report) {
  const int d = opt.digits;
  PoissonOptions popt{d, opt.target_rel_err};
  for (const MuParam& mu : mus_or_default(opt)) {
    for (const std::string& xs : xs_or(opt, {"0.5", "1", "5"})) {
      // t = 1, so x = nu.
      PmfParams params(mu, parse_real(xs, d), parse_real("1", d));
      DistributionTable table = pmf_table_adaptive(params, 1e-10, popt);
      const std::string where = "x=" + xs + " n_max=" + std::to_string(table.n_max());
      PrecisionScope scope(d);
      Real total = table.total();
      Real deficit = Real(1) - total;
      CheckRow row = compare("normalization", mu, where, total, Real(1), Measure::abs, tol(1e-10, d), d);
      row.pass = deficit <= Real(1e-10);
      report.rows.push_back(row);

      Real worst = 0;
      bool nonnegative = true;
      for (const PrecReal& m : table.masses) {
        if (m.value() < -m.err_bound()) nonnegative = false;
        if (m.value() < worst) worst = m.value();
      }
      CheckRow neg = compare("nonnegative", mu, where, worst, Real(0), Measure::abs, Real(0), d);
      neg.pass = nonnegative;
      report.rows.push_back(neg);
    }
  }
}

void suite_genfun(const CheckOptions& opt, CheckReport& report) {
  const int d = opt.digits;
  GenFunOptions gopt{d, opt.target_rel_err};
  for (const MuParam& mu : mus_or_default(opt)) {
    BellEvalContext ctx(mu, 12, d);
    for (const std::string& xs : xs_or(opt, {"0.5", "1", "2"})) {
      const Real x = parse_real(xs, d);
      GenFunReport r = verify_bell_gf(mu, x, 10, ctx);
      for (const GenFunEntry& e : r.entries) {
        CheckRow row = compare("bell-gf", mu, "x=" + xs + " m=" + std::to_string(e.m), e.from_genfun.value(),
                               e.from_polynomials.value(), Measure::abs, tol(e.tolerance, d), d);
        row.pass = e.pass;
        report.rows.push_back(row);
      }
    }
    for (const char* ss : {"-0.5", "0.25", "0.6931471805599453"}) {
      for (const char* xs : {"0.5", "1", "2"}) {
        const Real s = parse_real(ss, d);
        const Real x = parse_real(xs, d);
        PrecReal a = gf_bell_poly(mu, s, x, gopt);
        PrecReal b = gf_stirling_bivariate(mu, s, x, gopt);
        report.rows.push_back(exact_row("bivariate-identity", mu, "s=" + std::string(ss) + " x=" + std::string(xs),
                                        to_decimal(a.value()) + " +- " + to_decimal(a.err_bound()),
                                        to_decimal(b.value()) + " +- " + to_decimal(b.err_bound())));
      }
    }
    // Central difference of E_mu(e^s - 1) at s = 0 against B_mu(1) = 1/Gamma(mu + 1).
    const Real h = parse_real("1e-6", d);
    PrecReal up = gf_bell_numbers(mu, h, gopt);
    PrecReal down = gf_bell_numbers(mu, -h, gopt);
    PrecisionScope scope(d);
    Real slope = (up.value() - down.value()) / (2 * h);
    report.rows.push_back(compare("bell-numbers-gf-slope", mu, "h=1e-6", slope, bell_number(ctx, 1).value(),
                                  Measure::rel, tol(1e-8, d), d));
  }
}

void suite_stirling_gf(const CheckOptions& opt, CheckReport& report) {
  const int d = opt.digits;
  for (const MuParam& mu : mus_or_default(opt)) {
    for (unsigned l = 0; l <= 6; ++l) {
      GenFunReport r = verify_stirling_gf(mu, l, 12, kGenFunTolerance, d);
      for (const GenFunEntry& e : r.entries) {
        const std::string where = "l=" + std::to_string(l) + " m=" + std::to_string(e.m);
        if (e.exact_zero) {
          CheckRow row = exact_row("stirling-gf-zero", mu, where, to_decimal(e.from_polynomials.value()), "0");
          row.pass = e.pass;
          report.rows.push_back(row);
          continue;
        }
        CheckRow row = compare("stirling-gf", mu, where, e.from_genfun.value(), e.from_polynomials.value(),
                               Measure::abs, tol(e.tolerance, d), d);
        row.pass = e.pass;
        report.rows.push_back(row);
      }
    }
  }
}

void suite_dualpath(const CheckOptions& opt, CheckReport& report) {
  const int d = opt.digits;
  const double series_target = std::min(opt.target_rel_err, kDualPathSeriesTarget);
  for (const MuParam& mu : mus_or_default(opt)) {
    BellEvalContext ctx(mu, 8, d);
    for (const std::string& xs : xs_or(opt, {"0.1", "0.5", "1", "2", "5"})) {
      const Real x = parse_real(xs, d);
      auto series = bell_poly_series_all(mu, x, 8, series_target, d);
      for (unsigned m = 0; m <= 8; ++m) {
        PrecReal finite = bell_poly(ctx, x, m);
        const PrecReal& inf = series[m].value;
        const std::string where = "x=" + xs + " m=" + std::to_string(m);
        Real combined;
        {
          PrecisionScope scope(d);
          combined = finite.err_bound() + inf.err_bound();
        }
        report.rows.push_back(compare("dualpath-bounds", mu, where, finite.value(), inf.value(), Measure::abs,
                                      combined, d));
        report.rows.push_back(compare("dualpath-abs", mu, where, finite.value(), inf.value(), Measure::abs,
                                      tol(kDualPathAbsTolerance, d), d));
      }
    }
  }
}

void suite_moments(const CheckOptions& opt, CheckReport& report) {
  const int d = opt.digits;
  PoissonOptions popt{d, opt.target_rel_err};
  for (const MuParam& mu : mus_or_default(opt)) {
    BellEvalContext ctx(mu, 4, d);
    for (const std::string& xs : xs_or(opt, {"0.5", "1", "5"})) {
      PmfParams params(mu, parse_real(xs, d), parse_real("1", d));
      DistributionTable table = pmf_table_adaptive(params, 1e-20, popt);
      const unsigned n_max = table.n_max();
      for (unsigned m = 0; m <= 4; ++m) {
        PrecisionScope scope(d);
        Real partial = 0;
        Real errs = 0;
        for (unsigned n = 0; n <= n_max; ++n) {
          Real power = m == 0 ? Real(1) : pow(Real(n), static_cast<int>(m));
          partial += power * table.masses[n].value();
          errs += power * table.masses[n].err_bound();
        }
        PrecReal analytic = moment(params, m, ctx);
        // The unseen mass sits beyond n_max, so weight it by (n_max + 1)^m with a factor 2 for its spread.
        Real bound = 2 * table.tail_bound * pow(Real(n_max + 1), static_cast<int>(m)) + errs + analytic.err_bound();
        report.rows.push_back(compare("moment-consistency", mu,
                                      "x=" + xs + " n_max=" + std::to_string(n_max) + " m=" + std::to_string(m),
                                      partial, analytic.value(), Measure::abs, bound, d));
      }
    }
  }
}

}  // namespace

CheckReport run_check(std::string_view suite, const CheckOptions& options) {
  CheckReport report;
  report.suite = std::string(suite);
  if (suite == "mu1") {
    suite_mu1(options, report);
  } else if (suite == "normalization") {
    suite_normalization(options, report);
  } else if (suite == "genfun") {
    suite_genfun(options, report);
  } else if (suite == "stirling-gf") {
    suite_stirling_gf(options, report);
  } else if (suite == "dualpath") {
    suite_dualpath(options, report);
  } else if (suite == "moments") {
    suite_moments(options, report);
  } else {
    throw DomainError("unknown check suite '" + std::string(suite) + "'");
  }
  return report;
}

}  // namespace frackell::cli
