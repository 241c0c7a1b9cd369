#pragma once

#include "frackell/gamma.hpp"
#include "frackell/series.hpp"

#include <map>
#include <memory>
#include <vector>

namespace frackell::detail {

struct Weight {
  Real value;
  Real abs_err;
  // abs_err / |value| in ulps of the weights' precision.
  double rel_ulps = 0.0;
};

// a_j = x^j / Gamma(mu*j + 1) at one working precision, with per-entry error in ulps.
// For mu = p/q with small p and q, entries past the first q follow from
// a_j = a_(j-q) * x^q * prod_s q / (p (j-q) + q (s+1)), s = 0 .. p-1.
class ScaledPowers {
 public:
  ScaledPowers(GammaLadder& ladder, const Real& x);
  const Real& at(std::size_t j);
  double ulps(std::size_t j) const;

 private:
  GammaLadder& ladder_;
  bool use_recurrence_ = false;
  unsigned long p_ = 0;
  unsigned long q_ = 0;
  Real x_;
  Real xpow_;
  Real xq_;
  std::vector<Real> values_;
};

// Lazily computed w_n = x^n/n! * E_mu^(n)(-x) for n = 0, 1, ... at `digits`,
// summed as w_n = sum_{j>=n} (-1)^(j-n) C(j, n) a_j. All n share the a_j
// tables, and each inner sum starts at the working precision the previous
// one ended with.
class PoissonWeights {
 public:
  PoissonWeights(const MuParam& mu, const Real& x, double target_rel_err, int digits);

  const Weight& at(std::size_t n);
  const SeriesResult* inner(std::size_t n) const;
  std::size_t size() const noexcept { return weights_.size(); }
  int digits() const noexcept { return digits_; }

 private:
  void push_next();
  ScaledPowers& powers(int work);

  LadderCache ladders_;
  double target_;
  int digits_;
  int last_work_ = 0;
  Real x_;
  std::map<int, std::unique_ptr<ScaledPowers>> powers_;
  std::vector<Weight> weights_;
  std::vector<SeriesResult> inner_;
};

}  // namespace frackell::detail
