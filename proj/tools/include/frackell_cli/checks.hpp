#pragma once

#include "frackell/precision.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace frackell::cli {

/// One verified identity: lhs against rhs, with the measure used to compare them.
struct CheckRow {
  std::string check;
  std::string mu;
  std::string params;
  std::string lhs;
  std::string rhs;
  std::string measure;  // "abs", "rel" or "exact"
  std::string diff;
  std::string tolerance;
  bool pass = false;
};

struct CheckReport {
  std::string suite;
  std::vector<CheckRow> rows;
  bool passed() const;
  std::size_t failures() const;
};

struct CheckOptions {
  std::vector<MuParam> mus;  // empty: 0.25, 0.5, 0.75, 1
  std::optional<std::string> x;
  int digits = kDefaultDigits;
  double target_rel_err = kDefaultTargetRelErr;
};

inline constexpr std::string_view kSuites[] = {"mu1", "normalization", "genfun", "stirling-gf", "dualpath",
                                               "moments"};

/// Runs one named suite. Throws DomainError for an unknown suite name.
CheckReport run_check(std::string_view suite, const CheckOptions& options);

/// Absolute-difference bound used by the dual-path suite at 50 digits.
inline constexpr double kDualPathAbsTolerance = 1e-20;
/// Relative target for the series side of the dual-path suite.
inline constexpr double kDualPathSeriesTarget = 1e-35;

}  // namespace frackell::cli
