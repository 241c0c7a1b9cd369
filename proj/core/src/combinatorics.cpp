#include "frackell/combinatorics.hpp"

#include <string>

namespace frackell {

BigInt big_binomial(std::uint64_t l, std::uint64_t n) {
  if (n > l) {
    throw DomainError("binomial(" + std::to_string(l) + ", " + std::to_string(n) + "): n > l");
  }
  if (n > l - n) n = l - n;
  BigInt out = 1;
  // Each prefix product is itself a binomial coefficient, so the division is exact.
  for (std::uint64_t i = 1; i <= n; ++i) {
    out *= l - n + i;
    out /= i;
  }
  return out;
}

BigInt big_factorial(std::uint64_t n) {
  BigInt out = 1;
  for (std::uint64_t i = 2; i <= n; ++i) out *= i;
  return out;
}

BigInt rising_product(std::uint64_t k, std::uint64_t n) {
  BigInt out = 1;
  for (std::uint64_t i = 1; i <= n; ++i) out *= k + i;
  return out;
}

}  // namespace frackell
