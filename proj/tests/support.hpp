#pragma once

#include "frackell/precision.hpp"
#include "oracles.hpp"

#include <string>

namespace testing {

using frackell::Real;

inline Real rel_diff(const Real& a, const Real& b) {
  frackell::PrecisionScope scope(std::max<int>(a.precision(), b.precision()));
  if (b == 0) return abs(a);
  return abs(a - b) / abs(b);
}

inline Real abs_diff(const Real& a, const Real& b) {
  frackell::PrecisionScope scope(std::max<int>(a.precision(), b.precision()));
  return abs(a - b);
}

inline bool within_rel(const Real& a, const Real& b, double tol) { return rel_diff(a, b) <= tol; }

inline Real num(const char* text, int digits = 80) { return frackell::parse_real(text, digits); }

// a / b at 80 digits; Boost's default for a bare Real is only 20.
inline Real frac(long a, long b) {
  frackell::PrecisionScope scope(80);
  return Real(a) / Real(b);
}

inline std::string show(const Real& v) { return frackell::to_decimal(v); }

}  // namespace testing
