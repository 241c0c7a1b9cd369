#include "frackell/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace frackell {

namespace {

constexpr int kDecayRun = 3;
constexpr int kGuardDigits = 10;

// 64-bit accumulator rounded upward, for bounds that need no more than a few digits.
class UpperSum {
 public:
  UpperSum() {
    mpfr_init2(acc_, 64);
    mpfr_init2(tmp_, 64);
    mpfr_set_zero(acc_, 1);
  }
  ~UpperSum() {
    mpfr_clear(acc_);
    mpfr_clear(tmp_);
  }
  UpperSum(const UpperSum&) = delete;
  UpperSum& operator=(const UpperSum&) = delete;

  void add(const Real& magnitude, double scale) {
    mpfr_set(tmp_, magnitude.backend().data(), MPFR_RNDU);
    if (scale != 1.0) mpfr_mul_d(tmp_, tmp_, scale, MPFR_RNDU);
    mpfr_add(acc_, acc_, tmp_, MPFR_RNDU);
  }
  Real value(int digits) const {
    PrecisionScope scope(digits);
    Real out;
    mpfr_set(out.backend().data(), acc_, MPFR_RNDU);
    return out;
  }

 private:
  mpfr_t acc_;
  mpfr_t tmp_;
};

struct PassResult {
  Real sum;
  Real abs_sum;
  Real max_term;
  Real tail;
  Real term_err;
  Real floor;  // absolute floor: base floor scaled by |t_0|
  std::size_t terms = 0;
};

PassResult run_pass(const TermSource& source, int work, const SumOptions& opt, const Real& base_floor) {
  PrecisionScope scope(work);
  TermStream next = source(work);

  PassResult r;
  r.floor = base_floor;
  r.sum = 0;
  r.max_term = 0;
  r.tail = 0;
  UpperSum abs_sum;
  UpperSum term_ulps;
  auto finish = [&] {
    r.abs_sum = abs_sum.value(work);
    r.term_err = term_ulps.value(work) * unit_roundoff(work);
  };

  // Stopping tests run on doubles and 64-bit values; only the sum itself is
  // carried at the working precision.
  Real a;
  double prev_log = 0.0;
  bool prev_zero = true;
  int decaying = 0;
  double last_ratio = std::numeric_limits<double>::quiet_NaN();
  const double log_target = std::log10(opt.target_rel_err);
  const double log_base_floor =
      opt.nonzero_sum ? -std::numeric_limits<double>::infinity() : log10_abs(base_floor);
  double log_floor = log_base_floor;

  for (std::size_t k = 0; k < opt.max_terms; ++k) {
    SeriesTerm t = next();
    a = abs(t.value);
    r.sum += t.value;
    abs_sum.add(a, 1.0);
    if (t.err_ulps > 0) term_ulps.add(a, t.err_ulps);
    if (a > r.max_term) r.max_term = a;
    r.terms = k + 1;

    const bool zero = a == 0;
    const double cur_log = zero ? 0.0 : log10_abs(a);
    if (k == 0 && !zero) {
      r.floor = base_floor * a;
      log_floor = log_base_floor + cur_log;
    }
    if (k > 0) {
      const bool shrank = zero || (!prev_zero && cur_log < prev_log);
      decaying = shrank ? decaying + 1 : 0;
      if (!prev_zero) last_ratio = zero ? 0.0 : std::pow(10.0, cur_log - prev_log);
      if (decaying >= kDecayRun && (zero || last_ratio < 1.0)) {
        // Geometric tail |t_k| r / (1 - r), padded for the double-precision ratio.
        const double log_tail =
            zero ? -std::numeric_limits<double>::infinity()
                 : cur_log + std::log10(last_ratio / (1.0 - last_ratio)) + 1e-9;
        const double log_sum = log10_abs(r.sum);
        if (log_tail <= log_target + log_sum || log_tail <= log_floor) {
          if (!zero) {
            r.tail = a;
            r.tail *= (last_ratio / (1.0 - last_ratio)) * (1.0 + 1e-9);
          }
          finish();
          return r;
        }
      }
    }
    prev_log = cur_log;
    prev_zero = zero;
  }
  std::ostringstream msg;
  msg << "series did not converge within " << opt.max_terms << " terms (last term ratio "
      << last_ratio << ")";
  throw NonConvergenceError(msg.str(), last_ratio);
}

}  // namespace

SeriesResult sum_adaptive(const TermSource& source, const SumOptions& opt) {
  check_digits(opt.digits);
  if (!(opt.target_rel_err > 1e-200 && opt.target_rel_err < 1e-6)) {
    throw DomainError("target_rel_err must lie in (1e-200, 1e-6)");
  }
  const int requested = static_cast<int>(std::ceil(-std::log10(opt.target_rel_err)));
  const int base = std::max(opt.digits, requested);
  int work = std::max(base, opt.start_digits);

  Real base_floor;
  Real target_real;
  {
    PrecisionScope scope(opt.digits);
    base_floor = opt.nonzero_sum ? Real(0) : pow(Real(10), -opt.digits);
    target_real = Real(opt.target_rel_err);
  }

  double prev_arith_log = std::numeric_limits<double>::infinity();
  for (;;) {
    PassResult pass = run_pass(source, work, opt, base_floor);
    PrecisionScope scope(work);

    double cancel = 0.0;
    if (pass.max_term > 0) {
      cancel = pass.sum == 0 ? static_cast<double>(work)
                             : std::max(0.0, log10_abs(pass.max_term) - log10_abs(pass.sum));
    }
    const Real u = unit_roundoff(work);
    Real rounding = Real(pass.terms) * u * pass.abs_sum;
    const Real& term_err = pass.term_err;
    const Real arith = rounding + term_err;
    Real allowed = target_real * abs(pass.sum) / 2;
    if (allowed < pass.floor) allowed = pass.floor;

    if (arith > allowed) {
      const double arith_log = log10_abs(arith);
      // A pass that gained less than a digit is limited by its inputs, not by `work`.
      if (prev_arith_log - arith_log >= 1.0) {
        prev_arith_log = arith_log;
        int next = work + static_cast<int>(std::ceil(arith_log - log10_abs(allowed))) + kGuardDigits;
        next = (next + 31) / 32 * 32;
        if (next > opt.max_digits) {
          std::ostringstream msg;
          msg << "series needs more than " << opt.max_digits << " working digits (cancellation of "
              << cancel << " digits)";
          throw NonConvergenceError(msg.str(), 0.0);
        }
        work = next;
        continue;
      }
    }

    PrecisionScope out_scope(opt.digits);
    Real value = at_digits(pass.sum, opt.digits);
    Real err = pass.tail + rounding + term_err + abs(value - pass.sum);
    err = at_digits(err, opt.digits);

    SeriesResult result{PrecReal(value, opt.digits, err), pass.terms,
                        at_digits(pass.max_term, opt.digits), cancel, work};
    if (abs(value) <= err) result.cancellation_digits = 0.0;
    return result;
  }
}

}  // namespace frackell
