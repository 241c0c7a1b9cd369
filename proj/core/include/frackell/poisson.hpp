#pragma once

#include "frackell/bell.hpp"
#include "frackell/series.hpp"

#include <vector>

namespace frackell {

/// Parameters of the fractional Poisson law. nu is in sec^-mu, t in sec.
/// At mu = 1, nu is the ordinary Poisson rate.
class PmfParams {
 public:
  PmfParams(MuParam mu, Real nu, Real t);

  const MuParam& mu() const noexcept { return mu_; }
  const Real& nu() const noexcept { return nu_; }
  const Real& t() const noexcept { return t_; }
  /// x = nu t^mu at `digits`.
  Real x(int digits) const;

 private:
  MuParam mu_;
  Real nu_;
  Real t_;
};

struct PoissonOptions {
  int digits = kDefaultDigits;
  double target_rel_err = kDefaultTargetRelErr;
};

inline constexpr unsigned kMaxTableSize = 200;

/// P_mu(n, t) = x^n/n! * E_mu^(n)(-x), x = nu t^mu.
SeriesResult pmf(const PmfParams& params, unsigned n, const PoissonOptions& options = {});

struct DistributionTable {
  PmfParams params;
  std::vector<PrecReal> masses;  // n = 0 .. n_max
  /// Bounds sum_{n > n_max} P_mu(n, t): max(0, 1 - sum masses) plus the
  /// accumulated error bounds of the masses.
  Real tail_bound;

  unsigned n_max() const { return static_cast<unsigned>(masses.size() - 1); }
  Real total() const;
};

/// Masses for n = 0 .. n_max (n_max <= 200).
DistributionTable pmf_table(const PmfParams& params, unsigned n_max, const PoissonOptions& options = {});

/// Grows n_max until the masses sum to at least 1 - max_deficit. Throws
/// CapacityError if that needs more than 200 points.
DistributionTable pmf_table_adaptive(const PmfParams& params, double max_deficit,
                                     const PoissonOptions& options = {});

/// m-th raw moment sum_n n^m P_mu(n, t) = B_mu(nu t^mu, m).
PrecReal moment(const PmfParams& params, unsigned m, const BellEvalContext& ctx);

}  // namespace frackell
