#include "frackell/bell.hpp"

#include "detail/poisson_weights.hpp"

#include "frackell/gamma.hpp"
#include "frackell/mittag_leffler.hpp"

#include <string>

namespace frackell {

BellEvalContext::BellEvalContext(MuParam mu, unsigned m_max, int digits)
    : mu_(std::move(mu)),
      triangle_(std::make_shared<const StirlingTriangle>(build_triangle(m_max))),
      digits_(digits) {
  check_digits(digits);
}

BellEvalContext::BellEvalContext(MuParam mu, std::shared_ptr<const StirlingTriangle> triangle,
                                 int digits)
    : mu_(std::move(mu)), triangle_(std::move(triangle)), digits_(digits) {
  check_digits(digits);
  if (!triangle_) throw ContractError("BellEvalContext needs a triangle");
}

PrecReal bell_poly(const BellEvalContext& ctx, const Real& x, unsigned m) {
  const auto& row = ctx.triangle().row(m);
  const int digits = ctx.digits();
  const int inner = digits + 10;
  if (m == 0) return PrecReal::exact(Real(1), digits);

  GammaLadder ladder(ctx.mu(), inner);
  PrecisionScope scope(inner);
  const Real xw = at_digits(x, inner);
  const Real u = unit_roundoff(inner);
  Real sum = 0;
  Real err = 0;
  Real xpow = 1;
  for (unsigned l = 0; l <= m; ++l) {
    if (l > 0) xpow *= xw;
    if (row[l] == 0) continue;
    Real term = Real(row[l]) * xpow / ladder.at(l);
    sum += term;
    err += abs(term) * Real(ladder.rel_err_ulps(l) + l + 4) * u;
  }
  err += Real(m + 1) * u * abs(sum);
  Real value = at_digits(sum, digits);
  err += abs(value - sum);
  return PrecReal(value, digits, at_digits(err, digits));
}

PrecReal bell_number(const BellEvalContext& ctx, unsigned m) {
  PrecisionScope scope(ctx.digits());
  return bell_poly(ctx, Real(1), m);
}

namespace {

void check_series_domain(const Real& x, unsigned m) {
  if (m > kSeriesPathMaxOrder) {
    throw DomainError("series path supports m <= " + std::to_string(kSeriesPathMaxOrder));
  }
  if (!(x >= 0) || x > kSeriesPathMaxX) {
    throw DomainError("series path supports 0 <= x <= 30");
  }
}

}  // namespace

std::vector<SeriesResult> bell_poly_series_all(const MuParam& mu, const Real& x, unsigned m_max,
                                               double target_rel_err, int digits) {
  check_digits(digits);
  check_series_domain(x, m_max);
  detail::PoissonWeights weights(mu, x, target_rel_err / 10, digits + 10);

  std::vector<SeriesResult> out;
  out.reserve(m_max + 1);
  for (unsigned m = 0; m <= m_max; ++m) {
    TermSource source = [&weights, m](int work) -> TermStream {
      auto n = std::make_shared<std::size_t>(0);
      // Weight errors are in ulps of the weights' precision; rescale to this pass.
      const double scale =
          Real(unit_roundoff(weights.digits()) / unit_roundoff(work)).convert_to<double>();
      return [&weights, m, n, work, scale]() -> SeriesTerm {
        const detail::Weight& w = weights.at(*n);
        Real power = m == 0 ? Real(1) : pow(Real(*n), static_cast<int>(m));
        ++*n;
        return {at_digits(power * w.value, work), w.rel_ulps * scale + m + 2};
      };
    };
    SumOptions opt;
    opt.digits = digits;
    opt.target_rel_err = target_rel_err;
    out.push_back(sum_adaptive(source, opt));
  }
  return out;
}

SeriesResult bell_poly_series(const MuParam& mu, const Real& x, unsigned m, double target_rel_err,
                              int digits) {
  check_series_domain(x, m);
  auto all = bell_poly_series_all(mu, x, m, target_rel_err, digits);
  return std::move(all.back());
}

}  // namespace frackell
