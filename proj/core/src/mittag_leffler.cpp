#include "frackell/mittag_leffler.hpp"

#include "frackell/combinatorics.hpp"

#include <memory>
#include <string>

namespace frackell {

void MLRequest::validate() const {
  check_digits(digits);
  if (derivative_order > kMaxDerivativeOrder) {
    throw DomainError("derivative order " + std::to_string(derivative_order) + " exceeds the cap of " +
                      std::to_string(kMaxDerivativeOrder));
  }
  if (!boost::multiprecision::isfinite(z)) throw DomainError("z must be finite");
}

SeriesResult ml_series(const MuParam& mu, const Real& z, unsigned n, const SumOptions& options,
                       LadderCache* ladders) {
  if (ladders != nullptr && !(ladders->mu() == mu)) {
    throw ContractError("ladder cache was built for a different mu");
  }
  auto local = std::make_shared<LadderCache>(mu);
  LadderCache* cache = ladders != nullptr ? ladders : local.get();

  TermSource source = [&z, n, cache, local](int work) -> TermStream {
    GammaLadder* ladder = &cache->get(work);
    struct State {
      BigInt coeff;  // (k+n)!/k!
      Real zpow;
      Real zw;
      std::size_t k = 0;
    };
    auto st = std::make_shared<State>();
    st->coeff = big_factorial(n);
    st->zw = at_digits(z, work);
    st->zpow = Real(1);
    return [st, ladder, n]() -> SeriesTerm {
      const std::size_t k = st->k;
      const std::size_t j = k + n;
      SeriesTerm term{Real(st->coeff) * st->zpow / ladder->at(j),
                      ladder->rel_err_ulps(j) + static_cast<double>(k + 4)};

      st->coeff *= (j + 1);
      st->coeff /= (k + 1);
      st->zpow *= st->zw;
      ++st->k;
      return term;
    };
  };
  return sum_adaptive(source, options);
}

namespace {

SumOptions options_for(const MLRequest& req) {
  SumOptions opt;
  opt.digits = req.digits;
  opt.target_rel_err = req.target_rel_err;
  return opt;
}

}  // namespace

SeriesResult ml_eval(const MLRequest& req) {
  req.validate();
  if (req.derivative_order != 0) {
    throw ContractError("ml_eval takes derivative_order = 0; use ml_derivative");
  }
  return ml_series(req.mu, req.z, 0, options_for(req));
}

SeriesResult ml_derivative(const MLRequest& req) {
  req.validate();
  if (req.derivative_order == 0) {
    throw ContractError("ml_derivative takes derivative_order >= 1; use ml_eval");
  }
  return ml_series(req.mu, req.z, req.derivative_order, options_for(req));
}

}  // namespace frackell
