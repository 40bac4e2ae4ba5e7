#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "superforge/error.hpp"

namespace superforge {

// Exact scalar kernel. All arithmetic in the project runs over Q with
// arbitrary-precision integers; fixed-width overflow would be a correctness
// bug, not a performance trade-off.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return numerator(q); }
inline Int rat_den(const Rat& q) { return denominator(q); }

// Bit length of the numerator, used as the pivot tie-break in elimination.
inline unsigned num_bit_length(const Rat& q) {
  Int n = abs(numerator(q));
  if (n == 0) return 0;
  return static_cast<unsigned>(msb(n)) + 1;
}

// Canonical "p/q" encoding with an explicit denominator, e.g. "3/1", "-2/5".
inline std::string rat_to_string(const Rat& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

// Accepts both "p/q" and plain integer strings.
inline Rat rat_from_string(const std::string& s) {
  try {
    return Rat(s);
  } catch (const std::exception&) {
    throw error(errc::syntax_error, "not a rational: '" + s + "'");
  }
}

}  // namespace superforge
