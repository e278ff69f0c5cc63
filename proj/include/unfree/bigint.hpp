#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace unfree {

using BigInt = boost::multiprecision::cpp_int;

/// Floor modulo: the result takes the sign of the divisor.
inline BigInt floor_mod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r != 0 && ((r < 0) != (m < 0))) r += m;
  return r;
}

} // namespace unfree
