#pragma once

#include "frackell/series.hpp"
#include "frackell/stirling.hpp"

#include <memory>
#include <vector>

namespace frackell {

/// Everything needed to evaluate B_mu(x, m) through the Stirling expansion.
/// Immutable after construction and shareable across threads.
class BellEvalContext {
 public:
  BellEvalContext(MuParam mu, unsigned m_max, int digits = kDefaultDigits);
  BellEvalContext(MuParam mu, std::shared_ptr<const StirlingTriangle> triangle,
                  int digits = kDefaultDigits);

  const MuParam& mu() const noexcept { return mu_; }
  const StirlingTriangle& triangle() const noexcept { return *triangle_; }
  int digits() const noexcept { return digits_; }

 private:
  MuParam mu_;
  std::shared_ptr<const StirlingTriangle> triangle_;
  int digits_;
};

/// B_mu(x, m) = sum_{l=0}^{m} c(m, l) x^l / Gamma(mu l + 1), any real x.
/// Throws CapacityError when m exceeds the context's triangle.
PrecReal bell_poly(const BellEvalContext& ctx, const Real& x, unsigned m);

/// B_mu(m) = B_mu(1, m).
PrecReal bell_number(const BellEvalContext& ctx, unsigned m);

inline constexpr unsigned kSeriesPathMaxOrder = 30;
inline constexpr double kSeriesPathMaxX = 30.0;

/// B_mu(x, m) from the double series
///   sum_n n^m x^n/n! sum_k (k+n)!/k! (-x)^k / Gamma(mu (k+n) + 1)
/// with the inner sum taken as the n-th Mittag-Leffler derivative at -x.
/// Restricted to 0 <= x <= 30 and m <= 30. Used to cross-check bell_poly.
SeriesResult bell_poly_series(const MuParam& mu, const Real& x, unsigned m,
                              double target_rel_err = kDefaultTargetRelErr,
                              int digits = kDefaultDigits);

/// bell_poly_series for every order 0..m_max, sharing the inner sums.
std::vector<SeriesResult> bell_poly_series_all(const MuParam& mu, const Real& x, unsigned m_max,
                                               double target_rel_err = kDefaultTargetRelErr,
                                               int digits = kDefaultDigits);

}  // namespace frackell
