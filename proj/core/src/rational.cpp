#include "pstchain/rational.hpp"

#include <cmath>
#include <numeric>
#include <regex>
#include <stdexcept>

namespace pstchain {

Rational::Rational(std::int64_t numerator, std::int64_t denominator)
    : num(numerator), den(denominator) {
  if (den == 0) {
    throw std::invalid_argument("Rational: zero denominator");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational operator+(const Rational& a, const Rational& b) {
  return {a.num * b.den + b.num * a.den, a.den * b.den};
}

Rational operator-(const Rational& a, const Rational& b) {
  return {a.num * b.den - b.num * a.den, a.den * b.den};
}

Rational operator*(const Rational& a, const Rational& b) {
  return {a.num * b.num, a.den * b.den};
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num == 0) {
    throw std::invalid_argument("Rational: division by zero");
  }
  return {a.num * b.den, a.den * b.num};
}

std::string to_string(const Rational& r) {
  if (r.den == 1) {
    return std::to_string(r.num);
  }
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

std::optional<Rational> parse_rational(const std::string& text) {
  static const std::regex pattern(R"(^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    return std::nullopt;
  }
  try {
    const std::int64_t num = std::stoll(m[1].str());
    const std::int64_t den = m[2].matched ? std::stoll(m[2].str()) : 1;
    if (den == 0) {
      return std::nullopt;
    }
    return Rational(num, den);
  } catch (const std::exception&) {
    return std::nullopt;  // out of 64-bit range
  }
}

namespace {

// Smallest-denominator fraction inside [lo, hi], 0 <= lo <= hi.
Rational simplest_between(double lo, double hi, int depth) {
  if (depth > 64) {
    throw std::runtime_error("rationalize: continued-fraction walk did not terminate");
  }
  const double floor_lo = std::floor(lo);
  if (std::ceil(lo) <= hi) {
    return Rational(static_cast<std::int64_t>(std::llround(std::ceil(lo))), 1);
  }
  // No integer in the interval: recurse on the reciprocal fractional parts.
  const Rational inner = simplest_between(1.0 / (hi - floor_lo), 1.0 / (lo - floor_lo), depth + 1);
  const std::int64_t a = static_cast<std::int64_t>(std::llround(floor_lo));
  return Rational(a * inner.num + inner.den, inner.num);
}

}  // namespace

std::optional<Rational> rationalize(double x, double tol, std::int64_t max_den) {
  if (!std::isfinite(x) || !(tol > 0) || max_den < 1) {
    return std::nullopt;
  }
  if (std::abs(x) > 1e12) {
    return std::nullopt;  // outside the certified integer range of the walk
  }
  const double sign = x < 0 ? -1.0 : 1.0;
  const double ax = std::abs(x);
  const double lo = std::max(0.0, ax - tol);
  const double hi = ax + tol;
  Rational best = simplest_between(lo, hi, 0);
  if (sign < 0) {
    best = Rational(-best.num, best.den);
  }
  if (best.den > max_den || std::abs(x - best.value()) >= tol) {
    return std::nullopt;
  }
  return best;
}

}  // namespace pstchain
