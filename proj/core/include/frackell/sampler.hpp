#pragma once

#include "frackell/poisson.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace frackell {

/// Identifier of the generator and inversion scheme, reported in outputs.
inline constexpr std::string_view kSamplerAlgorithm = "mt19937_64/splitmix64-shards/u53-inverse-cdf";

inline constexpr double kSamplerMaxTail = 1e-8;
inline constexpr unsigned kMaxMomentOrder = 6;

struct SampleRun {
  PmfParams params;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint32_t> samples;  // in draw order
  DistributionTable table;
};

struct SamplerOptions {
  PoissonOptions poisson;
  unsigned workers = 1;
};

/// Draws `count` event counts by inverting the cumulative masses of
/// pmf_table(params, n_max). Any mass beyond n_max lands on n_max.
///
/// Draws are produced in shards of fixed size, each seeded from
/// (seed, shard index), so the result does not depend on `workers`.
/// Throws CapacityError when the table's tail bound exceeds 1e-8.
SampleRun sample_counts(const PmfParams& params, std::uint64_t count, std::uint64_t seed, unsigned n_max,
                        const SamplerOptions& options = {});

/// Same, reusing a table the caller already built.
SampleRun sample_counts(const DistributionTable& table, std::uint64_t count, std::uint64_t seed,
                        unsigned workers = 1);

/// Raw moments (1/count) sum samples^m for m = 0 .. m_max (m_max <= 6).
std::vector<PrecReal> empirical_moments(const SampleRun& run, unsigned m_max, int digits = kDefaultDigits);

/// Standard error of the m-th raw moment estimate, from the sample itself.
double moment_standard_error(const SampleRun& run, unsigned m);

}  // namespace frackell
