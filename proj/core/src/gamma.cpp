#include "frackell/gamma.hpp"

#include "frackell/combinatorics.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <mutex>
#include <string>

namespace frackell {

namespace {

constexpr unsigned long kExactFactorialLimit = 5000;
constexpr unsigned long kLadderMaxPeriod = 4096;
constexpr int kSpougeReuseDigits = 128;

struct SpougeTable {
  int spouge_a = 0;
  int work_digits = 0;
  std::vector<Real> coeffs;  // coeffs[0] = sqrt(2 pi), coeffs[k] for k = 1 .. a-1
};

// Smallest a with a^(-1/2) (2 pi)^(-(a + 1/2)) <= 10^-(digits + 2).
int spouge_parameter(int digits) {
  const double log10_2pi = std::log10(2.0 * M_PI);
  int a = 2;
  while (-0.5 * std::log10(static_cast<double>(a)) - (a + 0.5) * log10_2pi > -(digits + 2.0)) ++a;
  return a;
}

std::shared_ptr<const SpougeTable> build_spouge(int digits) {
  auto table = std::make_shared<SpougeTable>();
  table->spouge_a = spouge_parameter(digits);
  // The coefficients alternate in sign and reach about e^a in magnitude.
  table->work_digits =
      digits + static_cast<int>(std::ceil(table->spouge_a * std::log10(M_E))) + 15;
  PrecisionScope scope(table->work_digits);

  const int a = table->spouge_a;
  table->coeffs.reserve(static_cast<std::size_t>(a));
  table->coeffs.push_back(sqrt(Real(2) * boost::math::constants::pi<Real>()));
  Real factorial = 1;  // (k-1)!
  Real e_pow = exp(Real(a - 1));  // e^(a-k)
  const Real e_inv = exp(Real(-1));
  for (int k = 1; k < a; ++k) {
    if (k > 1) {
      mpfr_mul_ui(factorial.backend().data(), factorial.backend().data(), static_cast<unsigned long>(k - 1),
                  MPFR_RNDN);
      e_pow *= e_inv;
    }
    // (a-k)^(k-1/2) = (a-k)^(k-1) * sqrt(a-k)
    Real c;
    mpfr_ui_pow_ui(c.backend().data(), static_cast<unsigned long>(a - k), static_cast<unsigned long>(k - 1),
                   MPFR_RNDN);
    c *= sqrt(Real(a - k));
    c *= e_pow;
    c /= factorial;
    if (k % 2 == 0) c = -c;
    table->coeffs.push_back(c);
  }
  return table;
}

std::shared_ptr<const SpougeTable> spouge_table(int digits) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const SpougeTable>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  // A somewhat wider table is accurate enough and far cheaper than a new one.
  auto it = cache.lower_bound(digits);
  if (it != cache.end() && it->first <= digits + kSpougeReuseDigits) return it->second;
  auto table = build_spouge(digits);
  cache.emplace(digits, table);
  return table;
}

bool is_small_positive_integer(const Real& a) {
  return a >= 1 && a <= kExactFactorialLimit && a == floor(a);
}

}  // namespace

PrecReal gamma_real(const Real& a, int digits) {
  check_digits(digits);
  if (!boost::multiprecision::isfinite(a) || a <= 0) {
    throw DomainError("gamma_real requires a finite positive argument");
  }

  if (is_small_positive_integer(a)) {
    BigInt exact = big_factorial(a.convert_to<unsigned long>() - 1);
    PrecisionScope scope(digits);
    Real value(exact);
    Real err = BigInt(value.convert_to<BigInt>()) == exact ? Real(0) : value * unit_roundoff(digits);
    return PrecReal(value, digits, err);
  }

  auto table = spouge_table(digits);
  Real value;
  {
    PrecisionScope scope(table->work_digits);
    Real x = at_digits(a, table->work_digits);
    // Gamma(x) = Gamma(z + 1) with z = x - 1; z + k is formed as x + (k - 1)
    // so tiny x keeps full relative accuracy.
    Real sum = table->coeffs[0];
    for (int k = 1; k < table->spouge_a; ++k) {
      sum += table->coeffs[static_cast<std::size_t>(k)] / (x + (k - 1));
    }
    Real shifted = x + (table->spouge_a - 1);
    Real power = pow(shifted, x - Real(0.5));
    Real decay = exp(-shifted);
    value = power * decay * sum;
    if (!boost::multiprecision::isfinite(value) || power == 0 || decay == 0) {
      throw RangeError("gamma_real(" + to_decimal(a) + ") exceeds the representable exponent range");
    }
  }
  PrecisionScope scope(digits);
  Real rounded = at_digits(value, digits);
  Real rel = Real(2) * pow(Real(10), -(digits + 2)) + unit_roundoff(digits);
  return PrecReal(rounded, digits, abs(rounded) * rel);
}

GammaLadder::GammaLadder(const MuParam& mu, int digits)
    : mu_(mu), digits_(digits), inner_digits_((digits + 10 + 63) / 64 * 64) {
  check_digits(digits);
  PrecisionScope scope(digits_);
  use_recurrence_ = mu_.denominator() <= kLadderMaxPeriod;
  if (use_recurrence_) {
    period_ = mu_.denominator().convert_to<std::size_t>();
    step_ = mu_.numerator().convert_to<unsigned long>();
  }
  values_.push_back(Real(1));
}

const Real& GammaLadder::at(std::size_t j) {
  if (j >= values_.size()) extend_to(j);
  return values_[j];
}

double GammaLadder::rel_err_ulps(std::size_t j) const {
  // Base values: one rounding to digits_ plus an inner error far below one ulp.
  if (j == 0) return 0.0;
  if (!use_recurrence_ || j < period_) return 3.0;
  const double chain = static_cast<double>(j / period_);
  return 3.0 + static_cast<double>(2 * step_ + 2) * chain;
}

void GammaLadder::extend_to(std::size_t j) {
  PrecisionScope scope(digits_);
  for (std::size_t i = values_.size(); i <= j; ++i) {
    if (!use_recurrence_ || i < period_) {
      const Real arg = mu_.times_plus_one(i, inner_digits_);
      values_.push_back(at_digits(gamma_real(arg, inner_digits_).value(), digits_));
      continue;
    }
    // mu*i + 1 = (mu*(i - q) + 1) + p
    const std::size_t prev = i - period_;
    Real acc = values_[prev];
    const Real q(mu_.denominator());
    for (unsigned long s = 0; s < step_; ++s) {
      BigInt num = mu_.numerator() * prev + mu_.denominator() * (s + 1);
      acc *= Real(num) / q;
    }
    values_.push_back(std::move(acc));
  }
}

GammaLadder& LadderCache::get(int digits) {
  auto& slot = ladders_[digits];
  if (!slot) slot = std::make_unique<GammaLadder>(mu_, digits);
  return *slot;
}

}  // namespace frackell
