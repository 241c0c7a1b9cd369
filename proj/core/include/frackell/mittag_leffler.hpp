#pragma once

#include "frackell/gamma.hpp"
#include "frackell/series.hpp"

namespace frackell {

inline constexpr unsigned kMaxDerivativeOrder = 200;

struct MLRequest {
  MuParam mu;
  Real z;
  unsigned derivative_order = 0;
  double target_rel_err = kDefaultTargetRelErr;
  int digits = kDefaultDigits;

  void validate() const;
};

/// E_mu(z) = sum_m z^m / Gamma(mu m + 1) for real z.
SeriesResult ml_eval(const MLRequest& req);

/// n-th derivative of E_mu at z by termwise differentiation:
/// sum_k (k+n)!/k! z^k / Gamma(mu (k+n) + 1). The factorial ratios are kept
/// as exact integers until the final multiplication.
SeriesResult ml_derivative(const MLRequest& req);

/// Shared kernel behind ml_eval and ml_derivative. `ladders` (optional) lets
/// a caller reuse Gamma values across many evaluations with the same mu.
SeriesResult ml_series(const MuParam& mu, const Real& z, unsigned n, const SumOptions& options,
                       LadderCache* ladders = nullptr);

}  // namespace frackell
