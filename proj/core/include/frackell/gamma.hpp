#pragma once

#include "frackell/precision.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <vector>

namespace frackell {

/// Gamma function for real a > 0 via Spouge's approximation, with the
/// Spouge parameter chosen from `digits`. Positive integers up to 5000 take
/// an exact factorial path.
///
/// The returned error bound satisfies err <= 10^(1-digits) * Gamma(a).
/// Throws DomainError for a <= 0 and RangeError when Gamma(a) overflows.
PrecReal gamma_real(const Real& a, int digits = kDefaultDigits);

/// Gamma(mu*j + 1) for j = 0, 1, 2, ... at a fixed working precision.
///
/// For mu = p/q with small q only q values come from gamma_real; the rest
/// follow from Gamma(a + p) = Gamma(a) * a (a+1) ... (a+p-1). Entries are
/// produced lazily. Not synchronized: keep one ladder per thread.
class GammaLadder {
 public:
  GammaLadder(const MuParam& mu, int digits);

  const Real& at(std::size_t j);
  /// Relative error bound on at(j) in units of the unit roundoff at digits().
  double rel_err_ulps(std::size_t j) const;
  int digits() const noexcept { return digits_; }
  const MuParam& mu() const noexcept { return mu_; }

 private:
  void extend_to(std::size_t j);

  MuParam mu_;
  int digits_;
  int inner_digits_;
  bool use_recurrence_;
  std::size_t period_ = 0;  // q when the recurrence is used
  unsigned long step_ = 0;  // p
  std::vector<Real> values_;
};

/// Per-evaluation cache of ladders keyed by working precision.
class LadderCache {
 public:
  explicit LadderCache(MuParam mu) : mu_(std::move(mu)) {}
  GammaLadder& get(int digits);
  const MuParam& mu() const noexcept { return mu_; }

 private:
  MuParam mu_;
  std::map<int, std::unique_ptr<GammaLadder>> ladders_;
};

}  // namespace frackell
