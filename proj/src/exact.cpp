#include "bimod/exact.hpp"

#include <boost/multiprecision/integer.hpp>

namespace bimod {

BigInt content(const IntVector& v) {
  BigInt g = 0;
  for (const auto& x : v) {
    if (x == 0) continue;
    g = g == 0 ? BigInt(abs(x)) : BigInt(boost::multiprecision::gcd(g, x));
    if (g == 1) break;
  }
  return g;
}

void make_primitive(IntVector& v) {
  BigInt g = content(v);
  if (g == 0) return;
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0) g = -g;
    break;
  }
  if (g == 1) return;
  for (auto& x : v) x /= g;
}

std::string to_decimal(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

}  // namespace bimod
