#include "frackell/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <thread>

namespace frackell {

namespace {

constexpr std::uint64_t kShardSize = 1 << 16;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Cumulative masses for n = 0 .. n_max - 1; u at or above the last entry maps to n_max.
std::vector<double> cumulative(const DistributionTable& table) {
  PrecisionScope scope(table.masses.front().precision());
  std::vector<double> cdf;
  cdf.reserve(table.masses.size());
  Real acc = 0;
  for (std::size_t n = 0; n + 1 < table.masses.size(); ++n) {
    acc += table.masses[n].value();
    cdf.push_back(acc.convert_to<double>());
  }
  return cdf;
}

void fill_shard(const std::vector<double>& cdf, std::uint32_t n_max, std::uint64_t seed, std::uint64_t shard,
                std::uint32_t* out, std::uint64_t len) {
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(shard)));
  for (std::uint64_t i = 0; i < len; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    out[i] = it == cdf.end() ? n_max : static_cast<std::uint32_t>(it - cdf.begin());
  }
}

}  // namespace

SampleRun sample_counts(const DistributionTable& table, std::uint64_t count, std::uint64_t seed,
                        unsigned workers) {
  if (count < 1) throw DomainError("sample count must be at least 1");
  {
    PrecisionScope scope(table.masses.front().precision());
    if (table.tail_bound > Real(kSamplerMaxTail)) {
      throw CapacityError("table tail bound " + to_decimal(at_digits(table.tail_bound, kMinDigits)) +
                          " exceeds 1e-8; raise n_max above " + std::to_string(table.n_max()));
    }
  }
  const auto cdf = cumulative(table);
  const auto n_max = static_cast<std::uint32_t>(table.n_max());

  SampleRun run{table.params, count, seed, std::vector<std::uint32_t>(count), table};
  const std::uint64_t shards = (count + kShardSize - 1) / kShardSize;
  auto do_shard = [&](std::uint64_t s) {
    const std::uint64_t begin = s * kShardSize;
    const std::uint64_t len = std::min(kShardSize, count - begin);
    fill_shard(cdf, n_max, seed, s, run.samples.data() + begin, len);
  };

  workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, shards));
  if (workers == 1) {
    for (std::uint64_t s = 0; s < shards; ++s) do_shard(s);
    return run;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::uint64_t s = w; s < shards; s += workers) do_shard(s);
    });
  }
  for (auto& t : pool) t.join();
  return run;
}

SampleRun sample_counts(const PmfParams& params, std::uint64_t count, std::uint64_t seed, unsigned n_max,
                        const SamplerOptions& options) {
  if (count < 1) throw DomainError("sample count must be at least 1");
  DistributionTable table = pmf_table(params, n_max, options.poisson);
  return sample_counts(table, count, seed, options.workers);
}

std::vector<PrecReal> empirical_moments(const SampleRun& run, unsigned m_max, int digits) {
  if (m_max > kMaxMomentOrder) {
    throw DomainError("empirical moments support m <= " + std::to_string(kMaxMomentOrder));
  }
  check_digits(digits);
  std::vector<BigInt> sums(m_max + 1, BigInt(0));
  std::vector<std::uint64_t> histogram(run.table.masses.size(), 0);
  for (auto s : run.samples) ++histogram[s];
  for (std::size_t n = 0; n < histogram.size(); ++n) {
    if (histogram[n] == 0) continue;
    BigInt power = 1;
    for (unsigned m = 0; m <= m_max; ++m) {
      sums[m] += power * histogram[n];
      power *= n;
    }
  }
  PrecisionScope scope(digits);
  const Real count(run.count);
  std::vector<PrecReal> out;
  out.reserve(m_max + 1);
  for (unsigned m = 0; m <= m_max; ++m) {
    Real value = Real(sums[m]) / count;
    out.emplace_back(value, digits, abs(value) * Real(2) * unit_roundoff(digits));
  }
  return out;
}

double moment_standard_error(const SampleRun& run, unsigned m) {
  long double s1 = 0, s2 = 0;
  for (auto x : run.samples) {
    long double p = std::pow(static_cast<long double>(x), static_cast<long double>(m));
    s1 += p;
    s2 += p * p;
  }
  const long double n = static_cast<long double>(run.count);
  const long double mean = s1 / n;
  const long double var = std::max(0.0L, s2 / n - mean * mean);
  return static_cast<double>(std::sqrt(var / n));
}

}  // namespace frackell
