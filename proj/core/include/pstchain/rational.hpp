#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace pstchain {

// Exact rational number with 64-bit components.  Always stored reduced
// (gcd(num, den) = 1) with den >= 1; the sign lives in the numerator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t numerator, std::int64_t denominator);

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_integer() const noexcept { return den == 1; }
  bool is_half_integer() const noexcept { return den == 2; }

  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational operator+(const Rational& a, const Rational& b);
Rational operator-(const Rational& a, const Rational& b);
Rational operator*(const Rational& a, const Rational& b);
Rational operator/(const Rational& a, const Rational& b);

std::string to_string(const Rational& r);

// Parses "p", "p/q" or "-p/q" (integers only); returns nullopt otherwise.
std::optional<Rational> parse_rational(const std::string& text);

// Smallest-denominator rational within tol of x, searched by the
// Stern-Brocot / continued-fraction walk of the interval [x - tol, x + tol].
// Returns nullopt when every such fraction needs a denominator > max_den,
// which is how an (operationally) irrational input is flagged.
std::optional<Rational> rationalize(double x, double tol = 1e-9, std::int64_t max_den = 10000);

}  // namespace pstchain
