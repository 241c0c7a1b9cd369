#include "frackell/precision.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace frackell {

namespace {

struct Rational {
  BigInt num;
  BigInt den;
};

// Exact rational from a decimal literal: [sign] digits [. digits] [e|E [sign] digits].
Rational parse_decimal_rational(std::string_view text) {
  auto fail = [&] { throw DomainError("not a decimal number: '" + std::string(text) + "'"); };
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  long long scale = 0;
  bool seen_digit = false;
  for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
    digits.push_back(text[i]);
    seen_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      digits.push_back(text[i]);
      --scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) fail();
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    // from_chars takes '-' but not '+'.
    if (i < text.size() && text[i] == '+' && i + 1 < text.size() && text[i + 1] != '-') ++i;
    long long exponent = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), exponent);
    if (ec != std::errc() || ptr == text.data() + i) fail();
    if (exponent > 100000 || exponent < -100000) fail();
    i = static_cast<std::size_t>(ptr - text.data());
    scale += exponent;
  }
  if (i != text.size()) fail();

  // BigInt's string constructor reads a leading 0 as an octal prefix.
  const auto first = digits.find_first_not_of('0');
  BigInt num(first == std::string::npos ? std::string("0") : digits.substr(first));
  BigInt den = 1;
  if (scale >= 0) {
    num *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(scale));
  } else {
    den = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-scale));
  }
  if (negative) num = -num;
  return {num, den};
}

}  // namespace

namespace {

std::recursive_mutex& precision_mutex() {
  static std::recursive_mutex m;
  return m;
}

}  // namespace

PrecisionScope::PrecisionScope(int digits) : lock_(precision_mutex()), saved_(Real::default_precision()) {
  check_digits(digits);
  Real::default_precision(static_cast<unsigned>(digits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

void check_digits(int digits) {
  if (digits < kMinDigits) {
    throw DomainError("precision must be at least " + std::to_string(kMinDigits) +
                      " decimal digits, got " + std::to_string(digits));
  }
  if (digits > 100000) {
    throw DomainError("precision of " + std::to_string(digits) + " digits is beyond supported range");
  }
}

Real at_digits(const Real& v, int digits) { return Real(v, static_cast<unsigned>(digits)); }

Real parse_real(std::string_view text, int digits) {
  check_digits(digits);
  PrecisionScope scope(digits);
  Rational r = parse_decimal_rational(text);
  if (r.den == 1) return Real(r.num);
  return Real(r.num) / Real(r.den);
}

Real unit_roundoff(int digits) {
  PrecisionScope scope(std::max(digits, kMinDigits));
  // Round-to-nearest on a p-bit mantissa.
  long bits = static_cast<long>(mpfr_get_prec(Real(1).backend().data()));
  Real u(1);
  mpfr_mul_2si(u.backend().data(), u.backend().data(), -bits, MPFR_RNDN);
  return u;
}

std::string to_decimal(const Real& v) {
  if (v == 0) return "0";
  return v.str(0, std::ios_base::scientific);
}

double log10_abs(const Real& v) {
  if (v == 0) return -std::numeric_limits<double>::infinity();
  long exp2 = 0;
  double mant = mpfr_get_d_2exp(&exp2, v.backend().data(), MPFR_RNDN);
  return std::log10(std::fabs(mant)) + static_cast<double>(exp2) * std::log10(2.0);
}

PrecReal::PrecReal(Real value, int digits, Real err_bound)
    : value_(std::move(value)), precision_(digits), err_bound_(std::move(err_bound)) {
  check_digits(digits);
  if (!boost::multiprecision::isfinite(value_)) {
    throw RangeError("value is not finite");
  }
  if (!boost::multiprecision::isfinite(err_bound_) || err_bound_ < 0) {
    throw RangeError("error bound must be finite and nonnegative");
  }
}

PrecReal PrecReal::exact(const Real& value, int digits) {
  return PrecReal(at_digits(value, digits), digits, Real(0, static_cast<unsigned>(digits)));
}

bool PrecReal::consistent_with(const PrecReal& other, const Real& slack) const {
  int digits = std::max(precision_, other.precision_);
  PrecisionScope scope(digits);
  Real diff = abs(at_digits(value_, digits) - at_digits(other.value_, digits));
  return diff <= err_bound_ + other.err_bound_ + slack;
}

MuParam::MuParam(std::string_view text) { init(text); }

MuParam::MuParam(double mu) {
  if (!std::isfinite(mu)) throw DomainError("mu must be finite");
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, mu);
  if (ec != std::errc()) throw DomainError("cannot format mu");
  init(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

void MuParam::init(std::string_view text) {
  Rational r;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational p = parse_decimal_rational(text.substr(0, slash));
    Rational q = parse_decimal_rational(text.substr(slash + 1));
    if (q.num == 0) throw DomainError("mu has zero denominator");
    r = {p.num * q.den, p.den * q.num};
    if (r.den < 0) {
      r.num = -r.num;
      r.den = -r.den;
    }
  } else {
    r = parse_decimal_rational(text);
  }
  if (r.num <= 0 || r.num > r.den) {
    throw DomainError("mu must satisfy 0 < mu <= 1, got " + std::string(text));
  }
  BigInt g = boost::multiprecision::gcd(r.num, r.den);
  num_ = r.num / g;
  den_ = r.den / g;
  PrecisionScope scope(20);
  approx_ = (Real(num_) / Real(den_)).convert_to<double>();
}

Real MuParam::times_plus_one(std::uint64_t k, int digits) const {
  PrecisionScope scope(digits);
  // Materialize the integer: constructing Real from an mpz expression picks the expression's own width.
  const BigInt top = num_ * k + den_;
  return Real(top) / Real(den_);
}

Real MuParam::value(int digits) const {
  PrecisionScope scope(digits);
  return Real(num_) / Real(den_);
}

std::string MuParam::str() const {
  if (den_ == 1) return num_.str();
  // Terminating decimals print as decimals, everything else as p/q.
  BigInt d = den_;
  unsigned twos = 0, fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return num_.str() + "/" + den_.str();
  unsigned places = std::max(twos, fives);
  BigInt scaled = num_ * boost::multiprecision::pow(BigInt(10), places) / den_;
  std::string s = scaled.str();
  if (s.size() <= places) s.insert(0, places - s.size() + 1, '0');
  s.insert(s.size() - places, ".");
  return s;
}

}  // namespace frackell
