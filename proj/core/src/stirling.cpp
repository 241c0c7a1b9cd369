#include "frackell/stirling.hpp"

#include "frackell/combinatorics.hpp"
#include "frackell/gamma.hpp"

#include <algorithm>
#include <string>
#include <thread>

namespace frackell {

namespace {

void check_order(unsigned m_max) {
  if (m_max < 1 || m_max > kMaxTriangleOrder) {
    throw DomainError("m_max must lie in [1, " + std::to_string(kMaxTriangleOrder) + "], got " +
                      std::to_string(m_max));
  }
}

std::vector<std::vector<BigInt>> pascal_rows(unsigned l_max) {
  std::vector<std::vector<BigInt>> rows(l_max + 1);
  rows[0] = {BigInt(1)};
  for (unsigned l = 1; l <= l_max; ++l) {
    rows[l].resize(l + 1);
    rows[l][0] = rows[l][l] = 1;
    for (unsigned n = 1; n < l; ++n) rows[l][n] = rows[l - 1][n - 1] + rows[l - 1][n];
  }
  return rows;
}

BigInt int_pow(unsigned base, unsigned exponent) {
  if (exponent == 0) return BigInt(1);
  return boost::multiprecision::pow(BigInt(base), exponent);
}

std::vector<BigInt> numerator_row(unsigned m, const std::vector<std::vector<BigInt>>& binom) {
  std::vector<BigInt> powers(m + 1);
  for (unsigned n = 0; n <= m; ++n) powers[n] = int_pow(n, m);
  std::vector<BigInt> row(m + 1);
  for (unsigned l = 0; l <= m; ++l) {
    BigInt acc = 0;
    for (unsigned n = 0; n <= l; ++n) {
      BigInt term = binom[l][n] * powers[n];
      if ((l - n) % 2 == 0) {
        acc += term;
      } else {
        acc -= term;
      }
    }
    row[l] = std::move(acc);
  }
  return row;
}

BigInt zero_numerator{0};

}  // namespace

const BigInt& StirlingTriangle::numerator(unsigned m, unsigned l) const {
  if (m > m_max_) {
    throw CapacityError("triangle holds m <= " + std::to_string(m_max_) + ", asked for m = " +
                        std::to_string(m));
  }
  if (l > m) return zero_numerator;
  return rows_[m][l];
}

const std::vector<BigInt>& StirlingTriangle::row(unsigned m) const {
  if (m > m_max_) {
    throw CapacityError("triangle holds m <= " + std::to_string(m_max_) + ", asked for m = " +
                        std::to_string(m));
  }
  return rows_[m];
}

StirlingTriangle build_triangle(unsigned m_max, unsigned threads) {
  check_order(m_max);
  const auto binom = pascal_rows(m_max);
  StirlingTriangle tri;
  tri.m_max_ = m_max;
  tri.rows_.resize(m_max + 1);

  threads = std::clamp(threads, 1u, m_max + 1);
  if (threads == 1) {
    for (unsigned m = 0; m <= m_max; ++m) tri.rows_[m] = numerator_row(m, binom);
    return tri;
  }
  // Strided assignment balances the cubic cost of the later rows.
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      for (unsigned m = w; m <= m_max; m += threads) tri.rows_[m] = numerator_row(m, binom);
    });
  }
  for (auto& t : workers) t.join();
  return tri;
}

BigInt stirling_numerator(unsigned m, unsigned l) {
  if (l > m) return BigInt(0);
  BigInt acc = 0;
  for (unsigned n = 0; n <= l; ++n) {
    BigInt term = big_binomial(l, n) * int_pow(n, m);
    if ((l - n) % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

std::vector<std::vector<BigInt>> classic_stirling_triangle(unsigned m_max) {
  check_order(m_max);
  std::vector<std::vector<BigInt>> s(m_max + 1);
  s[0] = {BigInt(1)};
  for (unsigned m = 1; m <= m_max; ++m) {
    s[m].assign(m + 1, BigInt(0));
    for (unsigned l = 1; l <= m; ++l) {
      BigInt above = l < m ? s[m - 1][l] : BigInt(0);
      s[m][l] = l * above + s[m - 1][l - 1];
    }
  }
  return s;
}

namespace {

PrecReal evaluate(const MuParam& mu, const BigInt& numerator, unsigned m, unsigned l, int digits) {
  check_digits(digits);
  PrecisionScope scope(digits);
  if (l > m || (l == 0 && m > 0)) return PrecReal::exact(Real(0), digits);
  if (l == 0) return PrecReal::exact(Real(1), digits);

  if (mu.is_one()) {
    // c(m, l) = l! S(m, l), so the quotient is an exact integer.
    BigInt classic = numerator / big_factorial(l);
    Real value(classic);
    Real err = value.convert_to<BigInt>() == classic ? Real(0) : abs(value) * unit_roundoff(digits);
    return PrecReal(value, digits, err);
  }

  const int inner = digits + 10;
  const Real arg = mu.times_plus_one(l, inner);
  PrecReal g = gamma_real(arg, inner);
  Real value;
  Real rel;
  {
    PrecisionScope s(inner);
    value = Real(numerator) / g.value();
    rel = g.err_bound() / g.value() + Real(2) * unit_roundoff(inner);
  }
  Real rounded = at_digits(value, digits);
  Real err = abs(value) * rel + abs(rounded - value);
  return PrecReal(rounded, digits, at_digits(err, digits));
}

}  // namespace

PrecReal stirling_value(const MuParam& mu, unsigned m, unsigned l, int digits) {
  return evaluate(mu, stirling_numerator(m, l), m, l, digits);
}

PrecReal stirling_value(const MuParam& mu, const StirlingTriangle& triangle, unsigned m, unsigned l,
                        int digits) {
  return evaluate(mu, triangle.numerator(m, l), m, l, digits);
}

}  // namespace frackell
