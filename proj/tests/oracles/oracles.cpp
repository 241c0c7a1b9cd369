#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {

struct Scope {
  explicit Scope(int digits) : saved(Float::default_precision()) {
    Float::default_precision(static_cast<unsigned>(digits));
  }
  ~Scope() { Float::default_precision(saved); }
  unsigned saved;
};

Float round_to(const Float& v, int digits) {
  Scope s(digits);
  Float out;
  mpfr_set(out.backend().data(), v.backend().data(), MPFR_RNDN);
  return out;
}

// Magnitude of the largest term of sum |z|^k / Gamma(mu k + 1), in decimal digits.
int peak_digits(Ratio mu, double z) {
  const double a = std::abs(z);
  if (a < 1) return 0;
  const double m = static_cast<double>(mu.p) / static_cast<double>(mu.q);
  return static_cast<int>(std::pow(a, 1.0 / m) / std::log(10.0)) + 2;
}

}  // namespace

Float from_string(const char* text, int digits) {
  Scope s(digits);
  return Float(text);
}

Float exp(const Float& x, int digits) {
  Scope s(digits + 10);
  return round_to(boost::multiprecision::exp(round_to(x, digits + 10)), digits);
}

Float gamma(const Float& a, int digits) {
  Scope s(digits + 10);
  Float r;
  mpfr_gamma(r.backend().data(), round_to(a, digits + 10).backend().data(), MPFR_RNDN);
  return round_to(r, digits);
}

Float erfc(const Float& x, int digits) {
  const double xd = std::abs(x.convert_to<double>());
  // Terms peak near x^2 / ln 10 digits; erfc(x) itself can be as small as e^-x^2.
  const int guard = static_cast<int>(2.0 * xd * xd / std::log(10.0)) + 30;
  const int work = digits + guard;
  Scope s(work);
  const Float xw = round_to(x, work);
  const Float x2 = xw * xw;
  Float term = xw;  // (-1)^k x^(2k+1) / k!
  Float sum = 0;
  const Float eps = boost::multiprecision::pow(Float(10), -work);
  for (unsigned k = 0;; ++k) {
    const Float piece = term / (2 * k + 1);
    sum += piece;
    if (k > 4 && boost::multiprecision::abs(piece) < eps) break;
    term *= -x2;
    term /= (k + 1);
    if (k > 100000) throw std::runtime_error("erfc oracle did not converge");
  }
  const Float pi = boost::multiprecision::acos(Float(-1));
  const Float erf = 2 * sum / boost::multiprecision::sqrt(pi);
  return round_to(1 - erf, digits);
}

Float ml_half(const Float& z, int digits) {
  const double zd = std::abs(z.convert_to<double>());
  const int work = digits + static_cast<int>(zd * zd / std::log(10.0)) + 10;
  Scope s(work);
  const Float zw = round_to(z, work);
  return round_to(boost::multiprecision::exp(zw * zw) * erfc(-zw, work), digits);
}

Float ml_direct(Ratio mu, const Float& z, int digits) {
  const int work = digits + peak_digits(mu, z.convert_to<double>()) + 20;
  Scope s(work);
  const Float zw = round_to(z, work);
  const Float eps = boost::multiprecision::pow(Float(10), -work);
  Float zpow = 1;
  Float sum = 0;
  Float prev = 0;
  for (unsigned long k = 0;; ++k) {
    Float arg = Float(mu.p * k) / mu.q + 1;
    Float g;
    mpfr_gamma(g.backend().data(), arg.backend().data(), MPFR_RNDN);
    const Float term = zpow / g;
    sum += term;
    const Float a = boost::multiprecision::abs(term);
    if (k > 3 && a < eps && a <= prev) break;
    prev = a;
    zpow *= zw;
    if (k > 200000) throw std::runtime_error("Mittag-Leffler oracle did not converge");
  }
  return round_to(sum, digits);
}

Int pascal_binomial(unsigned l, unsigned n) {
  if (n > l) return 0;
  return pascal_rows(l)[l][n];
}

std::vector<std::vector<Int>> pascal_rows(unsigned l_max) {
  std::vector<std::vector<Int>> rows(l_max + 1);
  for (unsigned l = 0; l <= l_max; ++l) {
    rows[l].assign(l + 1, Int(1));
    for (unsigned n = 1; n < l; ++n) rows[l][n] = rows[l - 1][n - 1] + rows[l - 1][n];
  }
  return rows;
}

std::vector<std::vector<Int>> stirling2(unsigned m_max) {
  std::vector<std::vector<Int>> s(m_max + 1, std::vector<Int>(m_max + 1, Int(0)));
  s[0][0] = 1;
  for (unsigned m = 1; m <= m_max; ++m) {
    for (unsigned l = 1; l <= m; ++l) s[m][l] = Int(l) * s[m - 1][l] + s[m - 1][l - 1];
  }
  return s;
}

std::vector<Int> bell_numbers(unsigned m_max) {
  std::vector<Int> out{Int(1)};
  std::vector<Int> row{Int(1)};
  for (unsigned m = 1; m <= m_max; ++m) {
    std::vector<Int> next{row.back()};
    for (const Int& v : row) next.push_back(next.back() + v);
    row = std::move(next);
    out.push_back(row.front());
  }
  return out;
}

Float poisson_pmf(const Float& x, unsigned n, int digits) {
  Scope s(digits + 10);
  const Float xw = round_to(x, digits + 10);
  Float v = boost::multiprecision::exp(-xw);
  for (unsigned k = 1; k <= n; ++k) v = v * xw / k;
  return round_to(v, digits);
}

Float dobinski(const Float& x, unsigned m, int digits) {
  const int work = digits + 20;
  Scope s(work);
  const Float xw = round_to(x, work);
  const Float eps = boost::multiprecision::pow(Float(10), -work);
  Float weight = 1;  // x^n / n!
  Float sum = 0;
  const double xd = xw.convert_to<double>();
  for (unsigned n = 0;; ++n) {
    const Float term = boost::multiprecision::pow(Float(n), m) * weight;
    sum += term;
    if (n > xd + m + 5 && term < eps * sum) break;
    weight = weight * xw / (n + 1);
    if (n > 100000) throw std::runtime_error("Dobinski oracle did not converge");
  }
  return round_to(boost::multiprecision::exp(-xw) * sum, digits);
}

Float direct_pmf(Ratio mu, const Float& x, unsigned n, int digits) {
  const double xd = x.convert_to<double>();
  const int work = digits + peak_digits(mu, xd) + 20 + static_cast<int>(n);
  Scope s(work);
  const Float xw = round_to(x, work);
  if (xw == 0) return Float(n == 0 ? 1 : 0);
  const Float eps = boost::multiprecision::pow(Float(10), -work);
  Float prefix = 1;  // x^n / n!
  for (unsigned i = 1; i <= n; ++i) prefix = prefix * xw / i;
  Float ratio = 1;  // (k+n)!/k!, built as a product of n integers
  for (unsigned i = 1; i <= n; ++i) ratio *= i;
  Float xpow = 1;  // (-x)^k
  Float sum = 0;
  Float prev = 0;
  for (unsigned long k = 0;; ++k) {
    Float arg = Float(mu.p * (k + n)) / mu.q + 1;
    Float g;
    mpfr_gamma(g.backend().data(), arg.backend().data(), MPFR_RNDN);
    const Float term = ratio * xpow / g;
    sum += term;
    const Float a = boost::multiprecision::abs(term);
    if (k > 3 && a < eps * boost::multiprecision::abs(sum) && a <= prev) break;
    prev = a;
    xpow *= -xw;
    ratio = ratio * (k + n + 1) / (k + 1);
    if (k > 200000) throw std::runtime_error("direct pmf oracle did not converge");
  }
  return round_to(prefix * sum, digits);
}

}  // namespace oracle
