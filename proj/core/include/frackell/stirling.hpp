#pragma once

#include "frackell/precision.hpp"

#include <cstddef>
#include <vector>

namespace frackell {

inline constexpr unsigned kMaxTriangleOrder = 500;

/// Exact numerators c(m, l) = sum_{n=0}^{l} (-1)^(l-n) binom(l, n) n^m for
/// 0 <= l <= m <= m_max. The fractional Stirling number of the second kind
/// is S_mu(m, l) = c(m, l) / Gamma(mu l + 1); the Gamma factor is applied
/// only on evaluation. Immutable once built.
class StirlingTriangle {
 public:
  unsigned m_max() const noexcept { return m_max_; }
  /// c(m, l); zero for l > m. Throws CapacityError for m > m_max.
  const BigInt& numerator(unsigned m, unsigned l) const;
  const std::vector<BigInt>& row(unsigned m) const;

 private:
  friend StirlingTriangle build_triangle(unsigned m_max, unsigned threads);
  unsigned m_max_ = 0;
  std::vector<std::vector<BigInt>> rows_;
};

/// Rows are independent and may be split over `threads` workers.
StirlingTriangle build_triangle(unsigned m_max, unsigned threads = 1);

/// Single numerator by the alternating sum, without building a triangle.
BigInt stirling_numerator(unsigned m, unsigned l);

/// Classic Stirling numbers of the second kind from
/// S(m, l) = l S(m-1, l) + S(m-1, l-1), S(0, 0) = 1.
std::vector<std::vector<BigInt>> classic_stirling_triangle(unsigned m_max);

/// S_mu(m, l) at `digits`. Exactly 0 for l > m or (l = 0, m > 0), exactly 1
/// for l = m = 0. At mu = 1 the value is the integer c(m, l) / l!.
PrecReal stirling_value(const MuParam& mu, unsigned m, unsigned l, int digits = kDefaultDigits);
PrecReal stirling_value(const MuParam& mu, const StirlingTriangle& triangle, unsigned m, unsigned l,
                        int digits = kDefaultDigits);

}  // namespace frackell
