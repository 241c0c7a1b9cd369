// Acceptance run: one PASS/FAIL line per criterion, each timed against its limit.

#include "support.hpp"

#include "frackell/bell.hpp"
#include "frackell/combinatorics.hpp"
#include "frackell/genfun.hpp"
#include "frackell/mittag_leffler.hpp"
#include "frackell/poisson.hpp"
#include "frackell/sampler.hpp"
#include "frackell/stirling.hpp"
#include "frackell_cli/cli.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace frackell;
using testing::num;
using testing::rel_diff;

namespace {

const char* const kMus[] = {"0.25", "0.5", "0.75", "1"};

struct Verdict {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string sci(const Real& v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << v.convert_to<double>();
  return s.str();
}

Verdict table_numerators() {
  Verdict v;
  const std::vector<std::vector<std::string>> expected = {{"1"},
                                                          {"1", "2"},
                                                          {"1", "6", "6"},
                                                          {"1", "14", "36", "24"},
                                                          {"1", "30", "150", "240", "120"},
                                                          {"1", "62", "540", "1560", "1800", "720"}};
  for (const char* mu : kMus) {
    std::ostringstream out, err;
    int code = cli::run({"stirling", "--mu", mu, "--exact", "--max-m", "6", "--format", "csv"}, out, err);
    if (code != 0) {
      v.fail("stirling command exited " + std::to_string(code));
      continue;
    }
    std::istringstream in(out.str());
    std::string line;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || line[0] == 'm') continue;
      std::vector<std::string> cells;
      std::istringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) {
        if (!cell.empty()) cells.push_back(cell);
      }
      rows.emplace_back(cells.begin() + 1, cells.end());
    }
    if (rows != expected) v.fail(std::string("numerator mismatch at mu=") + mu);
  }
  if (v.pass) v.detail = "21/21 numerators exact for each mu";
  return v;
}

Verdict cross_formula() {
  Verdict v;
  const unsigned m_max = 60;
  StirlingTriangle t = build_triangle(m_max);
  auto classic = classic_stirling_triangle(m_max);
  auto partitions = oracle::stirling2(m_max);
  std::size_t checked = 0;
  for (unsigned m = 0; m <= m_max; ++m) {
    for (unsigned l = 0; l <= m; ++l) {
      const BigInt rhs = big_factorial(l) * classic[m][l];
      if (t.numerator(m, l) != rhs || classic[m][l] != partitions[m][l]) {
        v.fail("mismatch at m=" + std::to_string(m) + " l=" + std::to_string(l));
      }
      ++checked;
    }
  }
  if (v.pass) v.detail = std::to_string(checked) + " entries, m <= 60";
  return v;
}

Verdict mu_one_reductions() {
  Verdict v;
  const MuParam one("1");
  Real worst_pmf = 0, worst_bell = 0, worst_gf = 0;
  for (const char* nut : {"0.5", "1", "2.5", "5", "10"}) {
    DistributionTable t = pmf_table(PmfParams(one, num(nut), Real(1)), 50);
    for (unsigned n = 0; n <= 50; ++n) {
      const Real d = rel_diff(t.masses[n].value(), oracle::poisson_pmf(num(nut), n, 60));
      worst_pmf = std::max(worst_pmf, d);
      if (d > 1e-12) v.fail(std::string("pmf nu*t=") + nut + " n=" + std::to_string(n));
    }
  }
  BellEvalContext ctx(one, 8);
  for (const char* x : {"0.3", "0.5", "1", "2", "3.7", "5"}) {
    for (unsigned m = 0; m <= 8; ++m) {
      const Real d = rel_diff(bell_poly(ctx, num(x), m).value(), oracle::dobinski(num(x), m, 60));
      worst_bell = std::max(worst_bell, d);
      if (d > 1e-12) v.fail(std::string("bell x=") + x + " m=" + std::to_string(m));
    }
  }
  for (const char* s : {"-1", "0", "0.5", "1"}) {
    PrecisionScope scope(80);
    const Real es = exp(num(s)) - 1;
    for (const char* x : {"0.5", "1", "2"}) {
      const Real d = rel_diff(gf_bell_poly(one, num(s), num(x)).value(), oracle::exp(num(x) * es, 80));
      worst_gf = std::max(worst_gf, d);
      if (d > 1e-25) v.fail(std::string("gf s=") + s + " x=" + x);
    }
    const Real d = rel_diff(gf_bell_numbers(one, num(s)).value(), oracle::exp(es, 80));
    worst_gf = std::max(worst_gf, d);
    if (d > 1e-25) v.fail(std::string("gf numbers s=") + s);
  }
  if (v.pass) {
    v.detail = "max rel: pmf " + sci(worst_pmf) + ", bell " + sci(worst_bell) + ", genfun " + sci(worst_gf);
  }
  return v;
}

Verdict normalization() {
  Verdict v;
  Real worst = 0;
  for (const char* mu : kMus) {
    for (const char* x : {"0.5", "1", "5"}) {
      DistributionTable t = pmf_table_adaptive(PmfParams(MuParam(mu), num(x), Real(1)), 1e-10);
      PrecisionScope scope(50);
      Real lower = 0;  // certified lower bound on the partial sum
      for (const PrecReal& w : t.masses) lower += w.value() - w.err_bound();
      const Real deficit = 1 - lower;
      worst = std::max(worst, deficit);
      if (deficit > 1e-10) v.fail(std::string("mu=") + mu + " x=" + x + " deficit " + sci(deficit));
    }
  }
  if (v.pass) v.detail = "worst deficit " + sci(worst);
  return v;
}

Verdict dual_path() {
  Verdict v;
  const int d = 50;
  Real worst = 0;
  std::size_t cases = 0;
  for (const char* mu : kMus) {
    BellEvalContext ctx(MuParam(mu), 8, d);
    for (const char* x : {"0.1", "0.5", "1", "2", "5"}) {
      auto series = bell_poly_series_all(MuParam(mu), num(x, d), 8, 1e-35, d);
      for (unsigned m = 0; m <= 8; ++m) {
        PrecReal finite = bell_poly(ctx, num(x, d), m);
        PrecisionScope scope(d);
        const Real diff = abs(finite.value() - series[m].value.value());
        const std::string where = std::string("mu=") + mu + " x=" + x + " m=" + std::to_string(m);
        if (diff > finite.err_bound() + series[m].value.err_bound()) v.fail("bounds " + where);
        if (diff > num("1e-20", d)) v.fail("abs " + where + " diff " + sci(diff));
        worst = std::max(worst, diff);
        ++cases;
      }
    }
  }
  if (v.pass) v.detail = std::to_string(cases) + " cases, max |diff| " + sci(worst);
  return v;
}

Verdict generating_functions() {
  Verdict v;
  std::size_t reports = 0;
  for (const char* mu : kMus) {
    BellEvalContext ctx(MuParam(mu), 12);
    for (unsigned M : {10u, 11u, 12u}) {
      for (const char* x : {"0.5", "1", "2"}) {
        if (!verify_bell_gf(MuParam(mu), num(x), M, ctx).passed()) {
          v.fail(std::string("bell gf mu=") + mu + " x=" + x + " M=" + std::to_string(M));
        }
        ++reports;
      }
      for (unsigned l = 0; l <= 6; ++l) {
        GenFunReport r = verify_stirling_gf(MuParam(mu), l, M);
        if (!r.passed()) v.fail(std::string("stirling gf mu=") + mu + " l=" + std::to_string(l));
        for (unsigned m = 0; m < l; ++m) {
          if (!r.entries[m].exact_zero || r.entries[m].from_genfun.value() != 0) {
            v.fail("nonzero coefficient below l");
          }
        }
        ++reports;
      }
    }
    for (const char* s : {"-1", "-0.25", "0", "0.3", "1"}) {
      for (const char* x : {"0", "0.5", "2", "5"}) {
        PrecReal a = gf_bell_poly(MuParam(mu), num(s), num(x));
        PrecReal b = gf_stirling_bivariate(MuParam(mu), num(s), num(x));
        if (a.value().precision() != b.value().precision() ||
            mpfr_equal_p(a.value().backend().data(), b.value().backend().data()) == 0 ||
            mpfr_equal_p(a.err_bound().backend().data(), b.err_bound().backend().data()) == 0) {
          v.fail(std::string("bivariate differs at mu=") + mu + " s=" + s + " x=" + x);
        }
      }
    }
  }
  if (v.pass) v.detail = std::to_string(reports) + " reports pass, bivariate bit-identical";
  return v;
}

Verdict mittag_leffler_half() {
  Verdict v;
  Real worst = 0;
  for (const char* z : {"-3", "-1", "-0.5", "0.5", "1", "2"}) {
    MLRequest req{MuParam("0.5"), num(z, 50)};
    req.digits = 50;
    const Real d = rel_diff(ml_eval(req).value.value(), oracle::ml_half(num(z), 80));
    worst = std::max(worst, d);
    if (d > 1e-25) v.fail(std::string("z=") + z + " rel " + sci(d));
  }
  if (v.pass) v.detail = "max rel " + sci(worst);
  return v;
}

Verdict monte_carlo() {
  Verdict v;
  std::ostringstream summary;
  for (const char* mu : {"0.5", "1"}) {
    PmfParams params(MuParam(mu), Real(1), Real(1));
    DistributionTable table = pmf_table_adaptive(params, 1e-9);
    BellEvalContext ctx(MuParam(mu), 3);
    int hits[4] = {0, 0, 0, 0};
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      SampleRun run = sample_counts(table, 100000, seed);
      auto moments = empirical_moments(run, 3);
      for (unsigned m = 1; m <= 3; ++m) {
        const double diff = std::abs((moments[m].value() - moment(params, m, ctx).value()).convert_to<double>());
        if (diff <= 4 * moment_standard_error(run, m)) ++hits[m];
      }
    }
    for (unsigned m = 1; m <= 3; ++m) {
      summary << " mu=" << mu << "/m=" << m << ":" << hits[m] << "/20";
      if (hits[m] < 19) v.fail(std::string("mu=") + mu + " m=" + std::to_string(m) + " only " +
                               std::to_string(hits[m]) + "/20 seeds");
    }
  }
  if (v.pass) v.detail = "within 4 SE:" + summary.str();
  return v;
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Verdict()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "numerator triangle m <= 6", 1, table_numerators},
      {2, "c(m,l) = l! S(m,l), m <= 60", 10, cross_formula},
      {3, "mu = 1 reductions", 30, mu_one_reductions},
      {4, "normalization", 60, normalization},
      {5, "dual-path Bell polynomials", 60, dual_path},
      {6, "generating-function coefficients", 30, generating_functions},
      {7, "Mittag-Leffler 1/2 vs erfc", 10, mittag_leffler_half},
      {8, "Monte Carlo moments", 120, monte_carlo},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_s) v.fail("runtime over the limit");
    if (!v.pass) ++failed;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " -- " << v.detail
              << " [" << std::fixed << std::setprecision(2) << secs << " s / " << c.limit_s << " s]\n"
              << std::defaultfloat << std::flush;
  }
  return failed == 0 ? 0 : 1;
}
