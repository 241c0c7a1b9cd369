#include "frackell_cli/cli.hpp"

#include "frackell/bell.hpp"
#include "frackell/mittag_leffler.hpp"
#include "frackell/poisson.hpp"
#include "frackell/sampler.hpp"
#include "frackell/stirling.hpp"
#include "frackell_cli/checks.hpp"
#include "frackell_cli/envelope.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#ifndef FRACKELL_VERSION
#define FRACKELL_VERSION "0.0.0"
#endif

namespace frackell::cli {

namespace {

constexpr std::uint64_t kMaxSampleCount = 100000000;
constexpr double kSamplerDeficit = 1e-9;

struct Common {
  std::optional<int> digits_flag;
  int digits = kDefaultDigits;
  double target = kDefaultTargetRelErr;
  std::string format = "json";
};

std::string num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::to_string(v);
}

template <class Int>
std::string num(Int v) {
  return std::to_string(v);
}

std::string dec(const Real& v, int digits) { return to_decimal(at_digits(v, digits)); }

Envelope start(const std::string& command, const std::vector<std::string>& args, const Common& c) {
  Envelope env;
  env.metadata["tool"] = "frackell";
  env.metadata["version"] = FRACKELL_VERSION;
  env.metadata["command"] = command;
  std::string echo = "frackell";
  for (const auto& a : args) echo += " " + a;
  env.metadata["command_line"] = echo;
  env.metadata["precision"] = num(c.digits);
  env.metadata["target_rel_err"] = num(c.target);
  env.metadata["format"] = c.format;
  return env;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--digits", c.digits_flag, "Working precision in decimal digits (default 50 or $FRACKELL_DIGITS)")
      ->check(CLI::Range(static_cast<int>(kMinDigits), 100000));
  sub->add_option("--target", c.target, "Target relative error of series sums")->capture_default_str();
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

Format format_of(const Common& c) { return c.format == "csv" ? Format::csv : Format::json; }

Json series_json(const SeriesResult& r, int digits) {
  Json j = Json::object();
  j["value"] = dec(r.value.value(), digits);
  j["err_bound"] = dec(r.value.err_bound(), digits);
  j["terms_used"] = num(r.terms_used);
  j["cancellation_digits"] = num(r.cancellation_digits);
  j["working_digits"] = num(r.working_digits);
  j["max_term_magnitude"] = dec(r.max_term_magnitude, digits);
  return j;
}

// --- ml -------------------------------------------------------------------

struct MlArgs {
  std::string mu;
  std::string z;
  unsigned derivative = 0;
};

Envelope cmd_ml(const MlArgs& a, const Common& c, const std::vector<std::string>& args) {
  MLRequest req{MuParam(a.mu), parse_real(a.z, c.digits), a.derivative, c.target, c.digits};
  SeriesResult r = a.derivative == 0 ? ml_eval(req) : ml_derivative(req);

  Envelope env = start("ml", args, c);
  env.metadata["mu"] = req.mu.str();
  env.metadata["parameters"] = Json{{"z", a.z}, {"derivative", num(a.derivative)}};
  env.payload = series_json(r, c.digits);
  env.table.header = {"value", "err_bound", "terms_used", "cancellation_digits", "working_digits"};
  env.table.rows.push_back({env.payload["value"].get<std::string>(), env.payload["err_bound"].get<std::string>(),
                            num(r.terms_used), num(r.cancellation_digits), num(r.working_digits)});
  return env;
}

// --- stirling ---------------------------------------------------------------

struct StirlingArgs {
  std::string mu;
  unsigned max_m = 0;
  bool exact = false;
};

Envelope cmd_stirling(const StirlingArgs& a, const Common& c, const std::vector<std::string>& args) {
  const MuParam mu(a.mu);
  if (a.max_m > kMaxTriangleOrder) {
    throw DomainError("--max-m must be at most " + std::to_string(kMaxTriangleOrder));
  }
  StirlingTriangle tri = build_triangle(a.max_m);

  Envelope env = start("stirling", args, c);
  env.metadata["mu"] = mu.str();
  env.metadata["parameters"] = Json{{"max_m", num(a.max_m)}, {"exact", a.exact}};

  env.table.header = {"m"};
  for (unsigned l = 1; l <= a.max_m; ++l) env.table.header.push_back("l=" + std::to_string(l));

  Json rows = Json::array();
  Json errs = Json::array();
  for (unsigned m = 1; m <= a.max_m; ++m) {
    std::vector<std::optional<std::string>> line{num(m)};
    Json row = Json::array();
    Json err_row = Json::array();
    for (unsigned l = 1; l <= m; ++l) {
      if (a.exact) {
        row.push_back(tri.numerator(m, l).str());
      } else {
        PrecReal v = stirling_value(mu, tri, m, l, c.digits);
        row.push_back(dec(v.value(), c.digits));
        err_row.push_back(dec(v.err_bound(), c.digits));
      }
      line.push_back(row.back().get<std::string>());
    }
    for (unsigned l = m + 1; l <= a.max_m; ++l) line.push_back(std::nullopt);
    rows.push_back(Json{{"m", num(m)}, {"values", row}});
    if (!a.exact) errs.push_back(Json{{"m", num(m)}, {"err_bounds", err_row}});
    env.table.rows.push_back(std::move(line));
  }
  env.payload["kind"] = a.exact ? "numerators" : "values";
  env.payload["first_l"] = "1";
  if (a.exact) env.payload["denominator"] = "Gamma(mu*l+1)";
  env.payload["rows"] = rows;
  if (!a.exact) env.payload["err_bounds"] = errs;
  if (a.exact) env.notes.emplace_back("denominator", "Gamma(mu*l+1)");
  return env;
}

// --- bell / bell-numbers -----------------------------------------------------

struct BellArgs {
  std::string mu;
  std::string x = "1";
  unsigned max_m = 0;
};

Envelope cmd_bell(const BellArgs& a, bool numbers, const Common& c, const std::vector<std::string>& args) {
  const MuParam mu(a.mu);
  if (a.max_m > kMaxTriangleOrder) {
    throw DomainError("--max-m must be at most " + std::to_string(kMaxTriangleOrder));
  }
  const Real x = parse_real(a.x, c.digits);
  BellEvalContext ctx(mu, a.max_m, c.digits);

  Envelope env = start(numbers ? "bell-numbers" : "bell", args, c);
  env.metadata["mu"] = mu.str();
  Json params{{"max_m", num(a.max_m)}};
  if (!numbers) params["x"] = a.x;
  env.metadata["parameters"] = params;
  env.table.header = {"m", "value", "err_bound"};
  Json rows = Json::array();
  for (unsigned m = 0; m <= a.max_m; ++m) {
    PrecReal v = numbers ? bell_number(ctx, m) : bell_poly(ctx, x, m);
    const std::string value = dec(v.value(), c.digits);
    const std::string err = dec(v.err_bound(), c.digits);
    rows.push_back(Json{{"m", num(m)}, {"value", value}, {"err_bound", err}});
    env.table.rows.push_back({num(m), value, err});
  }
  env.payload["rows"] = rows;
  return env;
}

// --- pmf ----------------------------------------------------------------------

struct PmfArgs {
  std::string mu;
  std::string nu;
  std::string t;
  unsigned max_n = 0;
};

Envelope cmd_pmf(const PmfArgs& a, const Common& c, const std::vector<std::string>& args) {
  if (a.max_n > kMaxTableSize) throw DomainError("--max-n must be at most " + std::to_string(kMaxTableSize));
  PmfParams params(MuParam(a.mu), parse_real(a.nu, c.digits), parse_real(a.t, c.digits));
  DistributionTable table = pmf_table(params, a.max_n, PoissonOptions{c.digits, c.target});

  Envelope env = start("pmf", args, c);
  env.metadata["mu"] = params.mu().str();
  env.metadata["parameters"] = Json{{"nu", a.nu}, {"t", a.t}, {"max_n", num(a.max_n)},
                                    {"x", dec(params.x(c.digits), c.digits)}};
  env.table.header = {"n", "mass", "err_bound"};
  Json rows = Json::array();
  for (unsigned n = 0; n <= a.max_n; ++n) {
    const std::string value = dec(table.masses[n].value(), c.digits);
    const std::string err = dec(table.masses[n].err_bound(), c.digits);
    rows.push_back(Json{{"n", num(n)}, {"mass", value}, {"err_bound", err}});
    env.table.rows.push_back({num(n), value, err});
  }
  const std::string tail = dec(table.tail_bound, c.digits);
  const std::string total = dec(table.total(), c.digits);
  env.payload["rows"] = rows;
  env.payload["total"] = total;
  env.payload["tail_bound"] = tail;
  env.notes.emplace_back("total", total);
  env.notes.emplace_back("tail_bound", tail);
  return env;
}

// --- check --------------------------------------------------------------------

struct CheckArgs {
  std::string suite;
  std::vector<std::string> mus;
  std::optional<std::string> x;
};

Envelope cmd_check(const CheckArgs& a, const Common& c, const std::vector<std::string>& args, bool& passed) {
  CheckOptions opt;
  for (const auto& m : a.mus) opt.mus.emplace_back(m);
  opt.x = a.x;
  opt.digits = c.digits;
  opt.target_rel_err = c.target;
  CheckReport report = run_check(a.suite, opt);
  passed = report.passed();

  Envelope env = start("check", args, c);
  Json mus = Json::array();
  for (const auto& m : opt.mus) mus.push_back(m.str());
  env.metadata["mu"] = opt.mus.empty() ? Json("0.25,0.5,0.75,1") : Json(mus);
  Json params{{"suite", a.suite}};
  if (a.x) params["x"] = *a.x;
  env.metadata["parameters"] = params;

  env.table.header = {"check", "mu", "case", "lhs", "rhs", "measure", "diff", "tolerance", "pass"};
  Json rows = Json::array();
  for (const CheckRow& r : report.rows) {
    rows.push_back(Json{{"check", r.check},   {"mu", r.mu},     {"case", r.params},
                        {"lhs", r.lhs},       {"rhs", r.rhs},   {"measure", r.measure},
                        {"diff", r.diff},     {"tolerance", r.tolerance}, {"pass", r.pass}});
    env.table.rows.push_back(
        {r.check, r.mu, r.params, r.lhs, r.rhs, r.measure, r.diff, r.tolerance, std::string(r.pass ? "PASS" : "FAIL")});
  }
  env.payload["suite"] = a.suite;
  env.payload["passed"] = passed;
  env.payload["checks"] = num(report.rows.size());
  env.payload["failures"] = num(report.failures());
  env.payload["rows"] = rows;
  env.notes.emplace_back("result", passed ? "PASS" : "FAIL");
  env.notes.emplace_back("failures", num(report.failures()));
  return env;
}

// --- sample -------------------------------------------------------------------

struct SampleArgs {
  std::string mu;
  std::string nu;
  std::string t;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  unsigned moments = 0;
  std::optional<unsigned> max_n;
  unsigned workers = 1;
};

Envelope cmd_sample(const SampleArgs& a, const Common& c, const std::vector<std::string>& args) {
  if (a.count > kMaxSampleCount) throw DomainError("--count must be at most 100000000");
  if (a.moments > kMaxMomentOrder) throw DomainError("--moments must be at most 6");
  if (a.max_n && *a.max_n > kMaxTableSize) {
    throw DomainError("--max-n must be at most " + std::to_string(kMaxTableSize));
  }
  PmfParams params(MuParam(a.mu), parse_real(a.nu, c.digits), parse_real(a.t, c.digits));
  PoissonOptions popt{c.digits, c.target};
  DistributionTable table =
      a.max_n ? pmf_table(params, *a.max_n, popt) : pmf_table_adaptive(params, kSamplerDeficit, popt);
  SampleRun run = sample_counts(table, a.count, a.seed, a.workers);

  Envelope env = start("sample", args, c);
  env.metadata["mu"] = params.mu().str();
  env.metadata["sampler_algorithm"] = std::string(kSamplerAlgorithm);
  Json params_json{{"nu", a.nu},           {"t", a.t},           {"count", num(a.count)},
                   {"seed", num(a.seed)},  {"moments", num(a.moments)},
                   {"n_max", num(table.n_max())}, {"n_max_source", a.max_n ? "flag" : "adaptive"},
                   {"workers", num(a.workers)}};
  env.metadata["parameters"] = params_json;

  std::vector<std::uint64_t> histogram(table.masses.size(), 0);
  for (auto s : run.samples) ++histogram[s];
  env.table.header = {"section", "key", "value", "standard_error", "analytic", "analytic_err_bound"};
  Json hist = Json::array();
  for (std::size_t n = 0; n < histogram.size(); ++n) {
    if (histogram[n] == 0) continue;
    hist.push_back(Json{{"n", num(n)}, {"frequency", num(histogram[n])}});
    env.table.rows.push_back({std::string("histogram"), num(n), num(histogram[n]), std::nullopt, std::nullopt,
                              std::nullopt});
  }

  Json moments = Json::array();
  if (a.moments > 0) {
    auto empirical = empirical_moments(run, a.moments, c.digits);
    BellEvalContext ctx(params.mu(), a.moments, c.digits);
    for (unsigned m = 0; m <= a.moments; ++m) {
      PrecReal analytic = moment(params, m, ctx);
      const double se = moment_standard_error(run, m);
      const std::string e = dec(empirical[m].value(), c.digits);
      moments.push_back(Json{{"m", num(m)},
                             {"empirical", e},
                             {"standard_error", num(se)},
                             {"analytic", dec(analytic.value(), c.digits)},
                             {"analytic_err_bound", dec(analytic.err_bound(), c.digits)}});
      env.table.rows.push_back({std::string("moment"), num(m), e, num(se), dec(analytic.value(), c.digits),
                                dec(analytic.err_bound(), c.digits)});
    }
  }
  env.payload["count"] = num(a.count);
  env.payload["seed"] = num(a.seed);
  env.payload["n_max"] = num(table.n_max());
  env.payload["tail_bound"] = dec(table.tail_bound, c.digits);
  env.payload["histogram"] = hist;
  env.payload["moments"] = moments;
  env.notes.emplace_back("tail_bound", dec(table.tail_bound, c.digits));
  return env;
}

int resolve_digits(Common& c, const char* env_digits) {
  if (c.digits_flag) {
    c.digits = *c.digits_flag;
    return kExitOk;
  }
  if (env_digits != nullptr && *env_digits != '\0') {
    std::string_view text(env_digits);
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) return kExitUsage;
    check_digits(value);
    c.digits = value;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const char* env_digits) {
  CLI::App app{"Fractional Poisson distribution, fractional Bell and Stirling numbers", "frackell"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("frackell ") + FRACKELL_VERSION);

  Common common;
  MlArgs ml;
  StirlingArgs st;
  BellArgs bell;
  BellArgs bell_numbers;
  PmfArgs pmf;
  CheckArgs check;
  SampleArgs sample;

  auto* c_ml = app.add_subcommand("ml", "Mittag-Leffler function E_mu(z) or its derivative");
  c_ml->add_option("--mu", ml.mu, "Order mu in (0, 1], decimal or p/q")->required();
  c_ml->add_option("--z", ml.z, "Real argument")->required();
  c_ml->add_option("--derivative", ml.derivative, "Derivative order")->check(CLI::Range(0u, kMaxDerivativeOrder));
  add_common(c_ml, common);

  auto* c_st = app.add_subcommand("stirling", "Fractional Stirling numbers of the second kind");
  c_st->add_option("--mu", st.mu, "Order mu in (0, 1]")->required();
  c_st->add_option("--max-m", st.max_m, "Largest row m")->required();
  c_st->add_flag("--exact", st.exact, "Print integer numerators over Gamma(mu*l+1)");
  add_common(c_st, common);

  auto* c_bell = app.add_subcommand("bell", "Fractional Bell polynomials B_mu(x, m)");
  c_bell->add_option("--mu", bell.mu, "Order mu in (0, 1]")->required();
  c_bell->add_option("--x", bell.x, "Argument x")->required();
  c_bell->add_option("--max-m", bell.max_m, "Largest order m")->required();
  add_common(c_bell, common);

  auto* c_bn = app.add_subcommand("bell-numbers", "Fractional Bell numbers B_mu(m)");
  c_bn->add_option("--mu", bell_numbers.mu, "Order mu in (0, 1]")->required();
  c_bn->add_option("--max-m", bell_numbers.max_m, "Largest order m")->required();
  add_common(c_bn, common);

  auto* c_pmf = app.add_subcommand("pmf", "Fractional Poisson probabilities P_mu(n, t)");
  c_pmf->add_option("--mu", pmf.mu, "Order mu in (0, 1]")->required();
  c_pmf->add_option("--nu", pmf.nu, "Rate nu > 0")->required();
  c_pmf->add_option("--t", pmf.t, "Time t >= 0")->required();
  c_pmf->add_option("--max-n", pmf.max_n, "Largest count n")->required();
  add_common(c_pmf, common);

  auto* c_check = app.add_subcommand("check", "Run a verification suite");
  std::vector<std::string> suites(std::begin(kSuites), std::end(kSuites));
  c_check->add_option("--suite", check.suite, "Suite name")->required()->check(CLI::IsMember(suites));
  c_check->add_option("--mu", check.mus, "Restrict to these mu values (repeatable)");
  c_check->add_option("--x", check.x, "Restrict to this x (suites normalization, genfun, dualpath, moments)");
  add_common(c_check, common);

  auto* c_sample = app.add_subcommand("sample", "Monte Carlo event counts by inverse CDF");
  c_sample->add_option("--mu", sample.mu, "Order mu in (0, 1]")->required();
  c_sample->add_option("--nu", sample.nu, "Rate nu > 0")->required();
  c_sample->add_option("--t", sample.t, "Time t >= 0")->required();
  c_sample->add_option("--count", sample.count, "Number of draws")->required()->check(CLI::PositiveNumber);
  c_sample->add_option("--seed", sample.seed, "64-bit seed")->required();
  c_sample->add_option("--moments", sample.moments, "Report raw moments up to this order");
  c_sample->add_option("--max-n", sample.max_n, "Table size (default: grow until deficit <= 1e-9)");
  c_sample->add_option("--workers", sample.workers, "Sampling threads")->check(CLI::Range(1u, 256u));
  add_common(c_sample, common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "frackell: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (resolve_digits(common, env_digits) != kExitOk) {
      err << "frackell: FRACKELL_DIGITS must be an integer\n";
      return kExitUsage;
    }
    if (!(common.target > 1e-200 && common.target < 1e-6)) {
      throw DomainError("--target must lie in (1e-200, 1e-6)");
    }
    Envelope env;
    bool passed = true;
    if (c_ml->parsed()) {
      env = cmd_ml(ml, common, args);
    } else if (c_st->parsed()) {
      env = cmd_stirling(st, common, args);
    } else if (c_bell->parsed()) {
      env = cmd_bell(bell, false, common, args);
    } else if (c_bn->parsed()) {
      env = cmd_bell(bell_numbers, true, common, args);
    } else if (c_pmf->parsed()) {
      env = cmd_pmf(pmf, common, args);
    } else if (c_check->parsed()) {
      env = cmd_check(check, common, args, passed);
    } else {
      env = cmd_sample(sample, common, args);
    }
    render(env, format_of(common), out);
    return passed ? kExitOk : kExitCheckFailed;
  } catch (const NonConvergenceError& e) {
    err << "frackell: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const RangeError& e) {
    err << "frackell: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const Error& e) {
    err << "frackell: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "frackell: internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace frackell::cli
