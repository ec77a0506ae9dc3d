// SPDX-License-Identifier: Apache-2.0
//
// Prime factorization of the array size and the mixed-radix antenna index
// digits used by the closed-form position construction.

#ifndef MABEAM_FACTORIZATION_HPP
#define MABEAM_FACTORIZATION_HPP

#include <cstddef>
#include <vector>

namespace mabeam {

/// n = f_1 * f_2 * ... with non-decreasing prime factors; offsets g_1 = 1,
/// g_i = f_1 * ... * f_{i-1}.
struct Factorization {
  int n = 1;
  std::vector<int> factors;
  std::vector<int> offsets;

  /// Number of prime factors counted with multiplicity.
  std::size_t count() const noexcept { return factors.size(); }
};

Factorization prime_factorize(int n);

/// Per-factor digits z with digits[i] < factors[i] and dot(z, offsets) + 1 = index.
struct MixedRadixDigits {
  std::vector<int> digits;
};

/// Digits of the 1-based antenna index. Throws kOutOfRange unless 1 <= index <= n.
MixedRadixDigits mixed_radix_digits(int index, const Factorization& fact);

/// Inverse of mixed_radix_digits: dot(z, offsets) + 1.
int mixed_radix_index(const MixedRadixDigits& z, const Factorization& fact);

}  // namespace mabeam

#endif  // MABEAM_FACTORIZATION_HPP
