#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace bimod {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<BigInt>;

/// gcd of the absolute values of all entries; 0 for the zero vector.
BigInt content(const IntVector& v);

/// Divides by the content and flips sign so the first nonzero entry is positive.
void make_primitive(IntVector& v);

inline std::string to_decimal(const BigInt& x) { return x.str(); }
std::string to_decimal(const Rational& x);

}  // namespace bimod
