// SPDX-License-Identifier: Apache-2.0

#include "mabeam/factorization.hpp"

#include <string>

#include "mabeam/error.hpp"

namespace mabeam {

Factorization prime_factorize(int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "cannot factorize n < 1");
  Factorization out;
  out.n = n;
  int rest = n;
  for (int p = 2; static_cast<long long>(p) * p <= rest; ++p) {
    while (rest % p == 0) {
      out.factors.push_back(p);
      rest /= p;
    }
  }
  if (rest > 1) out.factors.push_back(rest);

  int g = 1;
  for (int f : out.factors) {
    out.offsets.push_back(g);
    g *= f;
  }
  return out;
}

MixedRadixDigits mixed_radix_digits(int index, const Factorization& fact) {
  if (index < 1 || index > fact.n) {
    throw Error(ErrorCode::kOutOfRange, "antenna index " + std::to_string(index) +
                                            " outside 1.." + std::to_string(fact.n));
  }
  // Successive division of the remainder of (index - 1), from the last offset down.
  MixedRadixDigits z;
  z.digits.assign(fact.count(), 0);
  int rem = index - 1;
  for (std::size_t i = fact.count(); i-- > 0;) {
    z.digits[i] = rem / fact.offsets[i];
    rem %= fact.offsets[i];
  }
  return z;
}

int mixed_radix_index(const MixedRadixDigits& z, const Factorization& fact) {
  if (z.digits.size() != fact.count()) {
    throw Error(ErrorCode::kLengthMismatch, "digit count differs from factor count");
  }
  int index = 1;
  for (std::size_t i = 0; i < fact.count(); ++i) {
    if (z.digits[i] < 0 || z.digits[i] >= fact.factors[i]) {
      throw Error(ErrorCode::kOutOfRange, "digit exceeds its radix");
    }
    index += z.digits[i] * fact.offsets[i];
  }
  return index;
}

}  // namespace mabeam
