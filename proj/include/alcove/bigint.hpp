#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace alcove {

// Arbitrary-precision integer for walk counts and fused tensor powers, which
// grow like dim(gamma)^n and overflow 64 bits long before the asymptotic
// regime of interest.
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const BigInt& v) { return v.convert_to<double>(); }

} // namespace alcove
