#include "frackell/poisson.hpp"

#include "detail/poisson_weights.hpp"
#include "frackell/mittag_leffler.hpp"

#include <string>

namespace frackell {

PmfParams::PmfParams(MuParam mu, Real nu, Real t)
    : mu_(std::move(mu)), nu_(std::move(nu)), t_(std::move(t)) {
  if (!boost::multiprecision::isfinite(nu_) || nu_ <= 0) throw DomainError("nu must be positive");
  if (!boost::multiprecision::isfinite(t_) || t_ < 0) throw DomainError("t must be nonnegative");
  if (!boost::multiprecision::isfinite(x(kMinDigits))) throw RangeError("nu * t^mu overflows");
}

Real PmfParams::x(int digits) const {
  PrecisionScope scope(digits);
  if (t_ == 0) return Real(0);
  Real t = at_digits(t_, digits);
  return at_digits(nu_, digits) * (mu_.is_one() ? t : pow(t, mu_.value(digits)));
}

namespace {

// Guard digits for the scale factor x^n/n! and the masses before rounding.
constexpr int kGuard = 10;

PrecReal round_mass(const detail::Weight& w, int digits) {
  PrecisionScope scope(digits);
  Real value = at_digits(w.value, digits);
  Real err = w.abs_err + abs(value - w.value);
  return PrecReal(value, digits, at_digits(err, digits));
}

}  // namespace

SeriesResult pmf(const PmfParams& params, unsigned n, const PoissonOptions& options) {
  check_digits(options.digits);
  if (n > kMaxDerivativeOrder) {
    throw DomainError("pmf supports n <= " + std::to_string(kMaxDerivativeOrder));
  }
  const int inner = options.digits + kGuard;
  const Real x = params.x(inner);
  PrecisionScope scope(options.digits);
  if (x == 0) {
    Real one(n == 0 ? 1 : 0);
    return SeriesResult{PrecReal::exact(one, options.digits), 1, one, 0.0, options.digits};
  }

  SumOptions opt;
  opt.digits = inner;
  opt.target_rel_err = options.target_rel_err;
  SeriesResult inner_sum = ml_series(params.mu(), -x, n, opt);

  PrecisionScope inner_scope(inner);
  Real scale = 1;
  for (unsigned i = 1; i <= n; ++i) scale = scale * x / Real(i);
  Real value = scale * inner_sum.value.value();
  Real err = scale * inner_sum.value.err_bound() + abs(value) * Real(2 * n + 2) * unit_roundoff(inner);

  PrecReal mass = round_mass({value, err}, options.digits);
  return SeriesResult{mass, inner_sum.terms_used, at_digits(inner_sum.max_term_magnitude, options.digits),
                      inner_sum.cancellation_digits, inner_sum.working_digits};
}

Real DistributionTable::total() const {
  PrecisionScope scope(masses.front().precision());
  Real sum = 0;
  for (const auto& m : masses) sum += m.value();
  return sum;
}

namespace {

DistributionTable finish_table(const PmfParams& params, std::vector<PrecReal> masses, int digits) {
  PrecisionScope scope(digits);
  Real sum = 0;
  Real err = 0;
  for (const auto& m : masses) {
    sum += m.value();
    err += m.err_bound();
  }
  err += Real(masses.size()) * unit_roundoff(digits) * abs(sum);
  Real deficit = 1 - sum;
  Real tail = (deficit > 0 ? deficit : Real(0)) + err;
  return DistributionTable{params, std::move(masses), tail};
}

}  // namespace

DistributionTable pmf_table(const PmfParams& params, unsigned n_max, const PoissonOptions& options) {
  check_digits(options.digits);
  if (n_max > kMaxTableSize) {
    throw DomainError("pmf_table supports n_max <= " + std::to_string(kMaxTableSize));
  }
  const int inner = options.digits + kGuard;
  detail::PoissonWeights weights(params.mu(), params.x(inner), options.target_rel_err, inner);
  std::vector<PrecReal> masses;
  masses.reserve(n_max + 1);
  for (unsigned n = 0; n <= n_max; ++n) masses.push_back(round_mass(weights.at(n), options.digits));
  return finish_table(params, std::move(masses), options.digits);
}

DistributionTable pmf_table_adaptive(const PmfParams& params, double max_deficit,
                                     const PoissonOptions& options) {
  check_digits(options.digits);
  if (!(max_deficit > 0 && max_deficit < 1)) throw DomainError("max_deficit must lie in (0, 1)");
  const int inner = options.digits + kGuard;
  detail::PoissonWeights weights(params.mu(), params.x(inner), options.target_rel_err, inner);
  std::vector<PrecReal> masses;
  PrecisionScope scope(options.digits);
  const Real goal = 1 - Real(max_deficit);
  Real sum = 0;
  for (unsigned n = 0; n <= kMaxTableSize; ++n) {
    masses.push_back(round_mass(weights.at(n), options.digits));
    sum += masses.back().value();
    if (sum >= goal) return finish_table(params, std::move(masses), options.digits);
  }
  throw CapacityError("mass deficit " + to_decimal(Real(1 - sum)) + " still above " +
                      std::to_string(max_deficit) + " at n_max = " + std::to_string(kMaxTableSize));
}

PrecReal moment(const PmfParams& params, unsigned m, const BellEvalContext& ctx) {
  if (!(params.mu() == ctx.mu())) {
    throw ContractError("moment: mu of the parameters (" + params.mu().str() +
                        ") differs from the Bell context (" + ctx.mu().str() + ")");
  }
  return bell_poly(ctx, params.x(ctx.digits() + kGuard), m);
}

}  // namespace frackell
