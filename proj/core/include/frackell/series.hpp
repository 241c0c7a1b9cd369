#pragma once

#include "frackell/precision.hpp"

#include <cstddef>
#include <functional>

namespace frackell {

/// One summand, already rounded to the pass's working precision, with the
/// error it carries expressed in units of that precision's unit roundoff:
/// |error| <= |value| * err_ulps * u.
struct SeriesTerm {
  Real value;
  double err_ulps = 0.0;
};

/// Successive terms t_0, t_1, ... of a series.
using TermStream = std::function<SeriesTerm()>;

/// Builds a fresh TermStream evaluating at the given working precision.
/// Called once per summation pass; each pass starts again from t_0.
using TermSource = std::function<TermStream(int working_digits)>;

struct SumOptions {
  int digits = kDefaultDigits;
  double target_rel_err = kDefaultTargetRelErr;
  std::size_t max_terms = 100000;
  /// Starting working precision; 0 means `digits`. Lets callers that sum a
  /// family of similar series skip passes that are known to be too narrow.
  int start_digits = 0;
  int max_digits = 20000;
  /// The caller guarantees a nonzero sum: drop the absolute floor and stop on
  /// the relative test alone.
  bool nonzero_sum = false;
};

struct SeriesResult {
  PrecReal value;
  std::size_t terms_used = 0;
  Real max_term_magnitude;
  /// log10(max_term_magnitude / |value|), 0 when value is 0 within err_bound.
  double cancellation_digits = 0.0;
  int working_digits = 0;
};

/// Sums a decaying series to the requested relative accuracy.
///
/// A pass stops once three consecutive terms have shrunk and the geometric
/// tail estimate |t_k| r / (1 - r), with r = |t_k / t_(k-1)|, is below
/// max(target_rel_err * |sum|, 10^-digits * |t_0|). Scaling the absolute
/// floor by the leading term keeps series with tiny prefactors accurate
/// relative to their size. When rounding and per-term errors
/// exceed half of that allowance the series is summed again with enough extra
/// working digits to cover the shortfall plus 10; a pass that gains less than
/// one digit over the previous one is accepted as input-limited. The error
/// bound covers the tail, recursive-summation rounding and the per-term errors.
///
/// Throws NonConvergenceError if max_terms is reached or the needed
/// precision exceeds max_digits.
SeriesResult sum_adaptive(const TermSource& source, const SumOptions& options = {});

}  // namespace frackell
