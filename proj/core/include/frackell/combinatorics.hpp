#pragma once

#include "frackell/precision.hpp"

#include <cstdint>

namespace frackell {

/// Exact binomial coefficient; throws DomainError when n > l.
BigInt big_binomial(std::uint64_t l, std::uint64_t n);

BigInt big_factorial(std::uint64_t n);

/// (k+n)!/k! as a product of n consecutive integers.
BigInt rising_product(std::uint64_t k, std::uint64_t n);

}  // namespace frackell
