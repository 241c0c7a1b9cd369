#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace frackell {

/// Variable-precision binary float. The precision of every value is fixed at
/// construction; arithmetic results take the widest operand precision.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::mpz_int;

inline constexpr int kMinDigits = 15;
inline constexpr int kDefaultDigits = 50;
inline constexpr double kDefaultTargetRelErr = 1e-30;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class DomainError : public Error {
 public:
  using Error::Error;
};
class RangeError : public Error {
 public:
  using Error::Error;
};
class CapacityError : public Error {
 public:
  using Error::Error;
};
class ContractError : public Error {
 public:
  using Error::Error;
};
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, double last_ratio)
      : Error(what), last_ratio_(last_ratio) {}
  double last_ratio() const noexcept { return last_ratio_; }

 private:
  double last_ratio_;
};

/// Sets the default Real precision for its lifetime.
///
/// Boost keeps that default in one process-wide variable, so a scope also
/// holds a process-wide recursive lock: multiprecision work from different
/// threads is serialized rather than racing on the shared default. Nested
/// scopes on one thread are free.
class PrecisionScope {
 public:
  explicit PrecisionScope(int digits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  std::unique_lock<std::recursive_mutex> lock_;
  unsigned saved_;
};

void check_digits(int digits);

/// Copy of `v` re-rounded to `digits` decimal digits.
Real at_digits(const Real& v, int digits);

/// Parses a decimal literal ("0.25", "-1e-3", "7") at `digits` precision.
Real parse_real(std::string_view text, int digits);

/// Unit roundoff for a working precision of `digits` decimal digits.
Real unit_roundoff(int digits);

/// Shortest decimal string that parses back to exactly `v` at its precision.
std::string to_decimal(const Real& v);

/// log10|v|, or -infinity when v == 0. Safe far outside double range.
double log10_abs(const Real& v);

/// A real number with its working precision and an absolute error bound.
class PrecReal {
 public:
  PrecReal(Real value, int digits, Real err_bound);
  static PrecReal exact(const Real& value, int digits);

  const Real& value() const noexcept { return value_; }
  int precision() const noexcept { return precision_; }
  const Real& err_bound() const noexcept { return err_bound_; }
  double to_double() const { return value_.convert_to<double>(); }

  /// True if |this - other| <= err_bound + other.err_bound + slack.
  bool consistent_with(const PrecReal& other, const Real& slack = Real(0)) const;

 private:
  Real value_;
  int precision_;
  Real err_bound_;
};

/// Fractional order 0 < mu <= 1, held as an exact reduced rational p/q.
class MuParam {
 public:
  /// Decimal literal such as "0.5" or "3e-1"; "1/3" style fractions also accepted.
  explicit MuParam(std::string_view text);
  /// Uses the shortest decimal representation of `mu`, so 0.3 means 3/10.
  explicit MuParam(double mu);

  const BigInt& numerator() const noexcept { return num_; }
  const BigInt& denominator() const noexcept { return den_; }
  bool is_one() const noexcept { return num_ == den_; }
  double to_double() const noexcept { return approx_; }
  Real value(int digits) const;
  /// mu * k + 1, correctly rounded at `digits`.
  Real times_plus_one(std::uint64_t k, int digits) const;
  std::string str() const;

  friend bool operator==(const MuParam& a, const MuParam& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  void init(std::string_view text);

  BigInt num_;
  BigInt den_;
  double approx_ = 0.0;
};

}  // namespace frackell
