#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace ushuf {

// Exact arbitrary-precision integer coefficients.  Everything downstream
// assumes overflow is impossible, so do not swap this for a fixed-width type.
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_decimal(const BigInt& v) { return v.str(); }

}  // namespace ushuf
