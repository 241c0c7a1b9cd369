#include "detail/poisson_weights.hpp"

namespace frackell::detail {

namespace {

constexpr unsigned long kMaxStepNumerator = 64;
constexpr unsigned long kMaxStepDenominator = 256;

// Boost routes Real op= integer through a full-width temporary; these stay single-limb.
void mul_ui(Real& v, unsigned long k) { mpfr_mul_ui(v.backend().data(), v.backend().data(), k, MPFR_RNDN); }
void div_ui(Real& v, unsigned long k) { mpfr_div_ui(v.backend().data(), v.backend().data(), k, MPFR_RNDN); }

}  // namespace

ScaledPowers::ScaledPowers(GammaLadder& ladder, const Real& x) : ladder_(ladder) {
  PrecisionScope scope(ladder_.digits());
  x_ = at_digits(x, ladder_.digits());
  xpow_ = 1;
  values_.push_back(Real(1));
  const MuParam& mu = ladder_.mu();
  if (mu.numerator() <= kMaxStepNumerator && mu.denominator() <= kMaxStepDenominator) {
    use_recurrence_ = true;
    p_ = mu.numerator().convert_to<unsigned long>();
    q_ = mu.denominator().convert_to<unsigned long>();
    xq_ = 1;
    for (unsigned long i = 0; i < q_; ++i) xq_ *= x_;
  }
}

const Real& ScaledPowers::at(std::size_t j) {
  if (j < values_.size()) return values_[j];
  PrecisionScope scope(ladder_.digits());
  while (values_.size() <= j) {
    const std::size_t i = values_.size();
    if (!use_recurrence_ || i < q_) {
      xpow_ *= x_;
      values_.push_back(xpow_ / ladder_.at(i));
      continue;
    }
    const std::size_t prev = i - q_;
    Real v = values_[prev] * xq_;
    for (unsigned long s = 0; s < p_; ++s) {
      mul_ui(v, q_);
      div_ui(v, static_cast<unsigned long>(p_ * prev + q_ * (s + 1)));
    }
    values_.push_back(std::move(v));
  }
  return values_[j];
}

double ScaledPowers::ulps(std::size_t j) const {
  if (!use_recurrence_) return ladder_.rel_err_ulps(j) + static_cast<double>(j) + 1.0;
  const std::size_t base = j % q_;
  const double chain = static_cast<double>(j / q_);
  const double base_ulps = base == 0 ? 0.0 : ladder_.rel_err_ulps(base) + static_cast<double>(base) + 1.0;
  return base_ulps + chain * static_cast<double>(q_ + 2 * p_);
}

PoissonWeights::PoissonWeights(const MuParam& mu, const Real& x, double target_rel_err, int digits)
    : ladders_(mu), target_(target_rel_err), digits_(digits) {
  PrecisionScope scope(digits_);
  x_ = at_digits(x, digits_);
}

const Weight& PoissonWeights::at(std::size_t n) {
  while (weights_.size() <= n) push_next();
  return weights_[n];
}

const SeriesResult* PoissonWeights::inner(std::size_t n) const {
  return n < inner_.size() ? &inner_[n] : nullptr;
}

ScaledPowers& PoissonWeights::powers(int work) {
  auto& slot = powers_[work];
  if (!slot) slot = std::make_unique<ScaledPowers>(ladders_.get(work), x_);
  return *slot;
}

void PoissonWeights::push_next() {
  const std::size_t n = weights_.size();
  PrecisionScope scope(digits_);
  if (x_ == 0) {
    // Degenerate law: all mass at n = 0, no 0^0 evaluation.
    Real one(n == 0 ? 1 : 0);
    weights_.push_back({one, Real(0), 0.0});
    inner_.push_back(SeriesResult{PrecReal::exact(one, digits_), 1, one, 0.0, digits_});
    return;
  }

  TermSource source = [this, n](int work) -> TermStream {
    ScaledPowers* table = &powers(work);
    struct State {
      Real binom;  // C(j, n), built with one multiply and one divide per step
      std::size_t j;
    };
    auto st = std::make_shared<State>(State{Real(1), n});
    return [st, table, n]() -> SeriesTerm {
      const std::size_t j = st->j;
      SeriesTerm term{st->binom * table->at(j),
                      table->ulps(j) + 2.0 * static_cast<double>(j - n) + 1.0};
      if ((j - n) % 2 == 1) term.value = -term.value;
      mul_ui(st->binom, static_cast<unsigned long>(j + 1));
      div_ui(st->binom, static_cast<unsigned long>(j + 1 - n));
      ++st->j;
      return term;
    };
  };

  SumOptions opt;
  opt.digits = digits_;
  opt.target_rel_err = target_;
  opt.start_digits = last_work_;
  opt.nonzero_sum = true;  // masses are positive for x > 0
  SeriesResult inner = sum_adaptive(source, opt);
  last_work_ = inner.working_digits;

  const Real& value = inner.value.value();
  const Real& err = inner.value.err_bound();
  double ulps = 0.0;
  if (value != 0) ulps = Real(err / abs(value) / unit_roundoff(digits_)).convert_to<double>();
  weights_.push_back({value, err, ulps});
  inner_.push_back(std::move(inner));
}

}  // namespace frackell::detail
